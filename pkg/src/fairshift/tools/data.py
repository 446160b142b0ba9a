"""
Dataset tools - class ratios and reweighing weights of a CSV.
"""


def register_data_tools(mcp):
    """Register dataset tools with the MCP server."""

    @mcp.tool(description="Joint (y, z) class ratios, counts and label/group correlation of a CSV dataset.")
    async def dataset_ratios(path: str, label_column: str = "y", group_column: str = "z") -> str:
        """Summarize the class structure of a dataset.

        Args:
            path: CSV file with features, a 0/1 label column and a 0/1 group column.
            label_column: Name of the label column.
            group_column: Name of the group column.
        """
        from ..core.errors import FairShiftError
        from ..core.types import CELLS
        from ..data.io import load_csv
        from ..data.ratios import joint_ratios
        from ..stats.fairness import correlation

        try:
            data = load_csv(path, label_column, group_column)
            ratios = joint_ratios(data)
            report = correlation(ratios)
        except FairShiftError as e:
            return e.describe()

        output = f"Dataset: {path} ({data.n} rows, {data.p} features)\n"
        for (y, z), count, w in zip(CELLS, data.cell_counts(), ratios):
            output += f"  (y={y}, z={z}): {count} rows, ratio {w:.4f}\n"
        output += f"Pr(y=1) = {ratios.py:.4f}, Pr(z=1) = {ratios.pz:.4f}\n"
        output += f"rho = {report.rho:.4f}, c = {report.c:.4f}\n"
        return output

    @mcp.tool(description="Reweighing weights (Pr(y)Pr(z)/Pr(y,z)) per (y, z) class of a CSV dataset.")
    async def reweighing_summary(path: str, label_column: str = "y", group_column: str = "z") -> str:
        """Per-class weights that make label and group independent.

        Args:
            path: CSV dataset.
            label_column: Name of the label column.
            group_column: Name of the group column.
        """
        from ..core.errors import FairShiftError
        from ..core.types import CELLS
        from ..data.io import load_csv
        from ..preprocess.reweighing import reweighing_weights

        try:
            weights = reweighing_weights(load_csv(path, label_column, group_column))
        except FairShiftError as e:
            return e.describe()

        output = "Reweighing weights:\n"
        for (y, z), w in zip(CELLS, weights.meta["per_class"]):
            output += f"  (y={y}, z={z}): {w:.4f}\n"
        return output
