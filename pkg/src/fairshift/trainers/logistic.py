"""
Logistic regression trainer.
"""

from .base import Trainer


class LogisticTrainer(Trainer):
    """Plain mini-batch logistic regression."""

    def get_name(self) -> str:
        return "lr"
