"""Figure recipes: map simulator CSV schemas onto plot layouts.

This package never recomputes anything; it only draws what the simulator
wrote. Each recipe names the columns it needs, how rows group into series,
and the axis conventions of the corresponding reference figure.
"""

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


class RecipeError(Exception):
    """Input CSV does not match the recipe (or is unusable)."""


@dataclass(frozen=True)
class FigureRecipe:
    figure_id: str
    x: str
    y: str = None
    series: tuple = ()          # grouping columns; one line per group
    err: str = None             # optional stderr column for error bars
    overlay: str = None         # optional second y column, drawn dashed
    wide_values: tuple = ()     # alternative to y: each named column is a line
    xlabel: str = ""
    ylabel: str = ""
    xscale: str = "linear"
    drawstyle: str = "default"

    def required_columns(self):
        cols = [self.x]
        if self.wide_values:
            cols.extend(self.wide_values)
        else:
            cols.append(self.y)
            cols.extend(self.series)
            if self.overlay:
                cols.append(self.overlay)
        return cols


RECIPES = {
    "fig3": FigureRecipe(
        "fig3", x="rho_d_db", y="mean", series=("alpha", "metric"),
        err="stderr", xlabel="desired SNR (dB)",
        ylabel="mean sum rate (bits/s/Hz)"),
    "fig4": FigureRecipe(
        "fig4", x="K", y="mean", series=("alpha", "metric"), err="stderr",
        xlabel="number of cells K", ylabel="mean sum rate (bits/s/Hz)"),
    "fig5": FigureRecipe(
        "fig5", x="B_d", y="mean_loss_bits", series=("alpha",), err="stderr",
        overlay="bound_bits", xlabel="desired-channel bits B_d",
        ylabel="mean sum rate loss (bits/s/Hz)"),
    "fig6": FigureRecipe(
        "fig6", x="alpha", y="mean", series=("arm",), err="stderr",
        xscale="log", xlabel="interference gain alpha",
        ylabel="mean sum rate (bits/s/Hz)"),
    "fig7": FigureRecipe(
        "fig7", x="B_tot", y="mean", series=("alpha", "arm"), err="stderr",
        xlabel="feedback budget B_tot", ylabel="mean sum rate (bits/s/Hz)"),
    "fig8": FigureRecipe(
        "fig8", x="alpha_tilde_db", wide_values=("B_d", "B_i"),
        drawstyle="steps-post", xlabel="interfering-to-desired ratio (dB)",
        ylabel="allocated bits"),
    "fig9": FigureRecipe(
        "fig9", x="rho_d_db", y="mean_per_cell_rate", series=("arm",),
        err="stderr", xlabel="desired SNR (dB)",
        ylabel="mean per-cell rate (bits/s/Hz)"),
}


def load_rows(path):
    """Read a simulator CSV into (columns, rows of strings)."""
    import csv

    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            table = list(reader)
    except OSError as exc:
        raise RecipeError("cannot read %s: %s" % (path, exc))
    if not table:
        raise RecipeError("%s is empty (no header row)" % path)
    header, rows = table[0], table[1:]
    if not rows:
        raise RecipeError("%s has a header but no data rows" % path)
    return header, rows


def _check_schema(recipe, header):
    missing = [c for c in recipe.required_columns() if c not in header]
    if missing:
        raise RecipeError("CSV does not match recipe %s: missing column(s) %s"
                          % (recipe.figure_id, ", ".join(missing)))


def _groups(recipe, header, rows):
    """Yield (label, row subset) per series, preserving row order."""
    if not recipe.series:
        yield "", rows
        return
    idx = [header.index(c) for c in recipe.series]
    seen = {}
    for row in rows:
        key = tuple(row[i] for i in idx)
        seen.setdefault(key, []).append(row)
    for key, subset in seen.items():
        label = ", ".join("%s=%s" % (c, v) for c, v in zip(recipe.series, key))
        yield label, subset


def render(recipe, in_path, out_path):
    """Draw one figure from a simulator CSV; raises RecipeError on bad input."""
    header, rows = load_rows(in_path)
    _check_schema(recipe, header)
    xi = header.index(recipe.x)

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    try:
        if recipe.wide_values:
            xs = [float(r[xi]) for r in rows]
            for col in recipe.wide_values:
                ci = header.index(col)
                ax.plot(xs, [float(r[ci]) for r in rows], label=col,
                        drawstyle=recipe.drawstyle)
        else:
            yi = header.index(recipe.y)
            ei = header.index(recipe.err) if (recipe.err and
                                              recipe.err in header) else None
            oi = header.index(recipe.overlay) if recipe.overlay else None
            for label, subset in _groups(recipe, header, rows):
                xs = [float(r[xi]) for r in subset]
                ys = [float(r[yi]) for r in subset]
                if ei is not None:
                    errs = [float(r[ei]) for r in subset]
                    line = ax.errorbar(xs, ys, yerr=errs, label=label,
                                       capsize=2, marker="o", ms=3)
                    color = line.lines[0].get_color()
                else:
                    (ln,) = ax.plot(xs, ys, label=label, marker="o", ms=3)
                    color = ln.get_color()
                if oi is not None:
                    ax.plot(xs, [float(r[oi]) for r in subset], linestyle="--",
                            color=color,
                            label=(label + " (bound)") if label else "bound")
    except ValueError as exc:
        plt.close(fig)
        raise RecipeError("non-numeric cell in %s: %s" % (in_path, exc))

    ax.set_xscale(recipe.xscale)
    ax.set_xlabel(recipe.xlabel)
    ax.set_ylabel(recipe.ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.suptitle(recipe.figure_id)
    fig.tight_layout()
    try:
        fig.savefig(out_path)
    except OSError as exc:
        raise RecipeError("cannot write %s: %s" % (out_path, exc))
    finally:
        plt.close(fig)
