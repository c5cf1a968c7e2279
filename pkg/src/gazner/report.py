"""Report rendering: aligned text tables, TSV rows, and bar-chart figures."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .pipeline import AblationRow

_HEADER = ("model", "eval_set", "P", "R", "F1", "tp", "fp", "fn")


def _pct(v: float) -> str:
    return f"{100 * v:.2f}"


def tsv_lines(rows: Sequence[AblationRow]) -> list[str]:
    out = ["\t".join(_HEADER)]
    for row in rows:
        r = row.report
        out.append(
            "\t".join(
                (row.model, row.eval_set, _pct(r.precision), _pct(r.recall), _pct(r.f1),
                 str(r.tp), str(r.fp), str(r.fn))
            )
        )
    return out


def write_tsv(rows: Sequence[AblationRow], path: str | Path) -> None:
    Path(path).write_text("\n".join(tsv_lines(rows)) + "\n", encoding="utf-8")


def format_table(rows: Sequence[AblationRow]) -> str:
    """Aligned text table, one row per model with both eval sets side by side."""
    models: list[str] = []
    by_model: dict[str, dict[str, AblationRow]] = {}
    for row in rows:
        if row.model not in by_model:
            models.append(row.model)
            by_model[row.model] = {}
        by_model[row.model][row.eval_set] = row
    sets = sorted({row.eval_set for row in rows})
    width = max((len(m) for m in models), default=5)
    header = "Model".ljust(width) + "".join(
        f" | {name:^23}" for name in sets
    )
    sub = " " * width + "".join(" | " + f"{'P':>7}{'R':>8}{'F1':>8}" for _ in sets)
    lines = [header, sub, "-" * len(sub)]
    for m in models:
        cells = []
        for s in sets:
            row = by_model[m].get(s)
            if row is None:
                cells.append(f" | {'-':>7}{'-':>8}{'-':>8}")
            else:
                r = row.report
                cells.append(
                    f" | {_pct(r.precision):>7}{_pct(r.recall):>8}{_pct(r.f1):>8}"
                )
        lines.append(m.ljust(width) + "".join(cells))
    return "\n".join(lines)


def render_figure(rows: Sequence[AblationRow], path: str | Path) -> None:
    """Grouped P/R/F1 bars per model, one panel per evaluation set."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    sets = sorted({row.eval_set for row in rows})
    models = list(dict.fromkeys(row.model for row in rows))
    fig, axes = plt.subplots(1, max(len(sets), 1), figsize=(6 * max(len(sets), 1), 4.2))
    if len(sets) <= 1:
        axes = [axes]
    metrics = ("precision", "recall", "f1")
    bar_w = 0.25
    for ax, set_name in zip(axes, sets):
        reports = {r.model: r.report for r in rows if r.eval_set == set_name}
        xs = range(len(models))
        for mi, metric in enumerate(metrics):
            vals = [100 * getattr(reports[m], metric) if m in reports else 0.0 for m in models]
            ax.bar([x + (mi - 1) * bar_w for x in xs], vals, bar_w, label=metric.upper())
        ax.set_xticks(list(xs))
        ax.set_xticklabels(models, rotation=20, ha="right", fontsize=8)
        ax.set_ylim(0, 100)
        ax.set_ylabel("%")
        ax.set_title(set_name)
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
