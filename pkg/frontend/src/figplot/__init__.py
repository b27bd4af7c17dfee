"""Figure tool for the invariant-region CSV outputs of the ybx toolkit.

Consumes only the documented CSV file formats (region samples and d=3
boundary contours); it does not import the toolkit itself.
"""

from .schema import SchemaMismatch, contour_columns, region_columns
from .render import PlotSpec, render

__all__ = [
    "PlotSpec",
    "SchemaMismatch",
    "contour_columns",
    "region_columns",
    "render",
]

__version__ = "0.1.0"
