class PlotsError(Exception):
    """Base class for rendering failures."""


class SchemaError(PlotsError):
    """A required CSV column is absent."""

    def __init__(self, where: str, column: str):
        self.where = where
        self.column = column
        super().__init__(f"{where}: missing column {column!r}")


class NothingToPlot(PlotsError):
    """The input parsed fine but holds no plottable rows."""
