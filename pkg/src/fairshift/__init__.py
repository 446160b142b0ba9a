"""
fairshift - Fair training under label/group correlation shifts

Estimates how the correlation between labels and sensitive groups will differ
at deployment, finds training class ratios inside that range, resamples the
training data to match, and trains fair linear models on the result.

Features:
- Correlation and fairness statistics (DP, EO, PP) with analytic bounds
- Confidence interval for the deployment correlation
- SDP-based target ratio optimization with grid oracle fallback
- Resampling pre-processing (plus Reweighing and MinDistChange)
- Logistic, covariance-penalty and adaptive-batch trainers
- Experiment harness with CLI and MCP server
"""

__version__ = "0.1.0"
