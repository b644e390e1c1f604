"""Headless rendering of egg-drop method-comparison curves."""

from .errors import SchemaError
from .render import PlotSpec, RenderResult, crossover_annotation, load_table, render

__version__ = "0.1.0"
