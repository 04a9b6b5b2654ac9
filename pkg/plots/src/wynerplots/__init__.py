"""Plotting companion for the simulator CSV outputs."""

from .recipes import FigureRecipe, RECIPES, RecipeError, load_rows, render

__version__ = "0.1.0"

__all__ = ["FigureRecipe", "RECIPES", "RecipeError", "load_rows", "render",
           "__version__"]
