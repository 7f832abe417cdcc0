from .errors import NothingToPlot, PlotsError, SchemaError
from .render import (ConvergenceReport, PressureReport, render_convergence,
                     render_pressure)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceReport",
    "NothingToPlot",
    "PlotsError",
    "PressureReport",
    "SchemaError",
    "render_convergence",
    "render_pressure",
    "__version__",
]
