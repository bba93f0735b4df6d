from .figure_plotter import FigurePlotter


__all__ = [
    "FigurePlotter",
]
