"""bakerfigs: static figures from bakerlab CSV/JSON exports."""

from .render import (
    FigureInputError,
    render_shape_collapse,
    render_spectrum_scatter,
    render_walsh_circles,
    render_weyl_loglog,
)

__version__ = "0.1.0"
