"""Minimal SVG line charts for sweep results (no plotting library)."""

from __future__ import annotations

from .harness import SweepResult

_WIDTH, _HEIGHT = 720, 480
_LEFT, _RIGHT, _TOP, _BOTTOM = 80, 24, 36, 56
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def sweep_svg(result: SweepResult, title: str = "") -> str:
    """Render mean error vs parameter, one polyline per scheme.

    Error bars are drawn as vertical ticks spanning one standard
    deviation on each side of the mean (clipped at zero).
    """
    cfg = result.config
    xs = list(cfg.grid)
    x_min, x_max = min(xs), max(xs)
    if x_max == x_min:
        x_max = x_min + 1e-9
    y_max = 0.0
    for cell in result.cells:
        y_max = max(y_max, cell.mean_error + cell.std_error)
    y_max = y_max * 1.08 if y_max > 0 else 1e-9

    plot_w = _WIDTH - _LEFT - _RIGHT
    plot_h = _HEIGHT - _TOP - _BOTTOM

    def px(x: float) -> float:
        return _LEFT + (x - x_min) / (x_max - x_min) * plot_w

    def py(y: float) -> float:
        return _TOP + (1.0 - y / y_max) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_WIDTH / 2}" y="20" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{title}</text>'
        )
    # axes
    parts.append(
        f'<line x1="{_LEFT}" y1="{_TOP + plot_h}" x2="{_LEFT + plot_w}" '
        f'y2="{_TOP + plot_h}" stroke="black"/>'
    )
    parts.append(f'<line x1="{_LEFT}" y1="{_TOP}" x2="{_LEFT}" y2="{_TOP + plot_h}" stroke="black"/>')
    for i in range(5):
        xv = x_min + (x_max - x_min) * i / 4
        parts.append(
            f'<line x1="{_fmt(px(xv))}" y1="{_TOP + plot_h}" x2="{_fmt(px(xv))}" '
            f'y2="{_TOP + plot_h + 5}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_fmt(px(xv))}" y="{_TOP + plot_h + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_fmt(xv)}</text>'
        )
        yv = y_max * i / 4
        parts.append(
            f'<line x1="{_LEFT - 5}" y1="{_fmt(py(yv))}" x2="{_LEFT}" '
            f'y2="{_fmt(py(yv))}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_LEFT - 8}" y="{_fmt(py(yv) + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_fmt(yv)}</text>'
        )
    parts.append(
        f'<text x="{_LEFT + plot_w / 2}" y="{_HEIGHT - 14}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">parameter (rad)</text>'
    )
    parts.append(
        f'<text x="18" y="{_TOP + plot_h / 2}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12" transform="rotate(-90 18 {_TOP + plot_h / 2})">mean error</text>'
    )

    for scheme_pos, spec in enumerate(cfg.schemes):
        color = _PALETTE[scheme_pos % len(_PALETTE)]
        points = []
        bars = []
        for grid_pos in range(len(cfg.grid)):
            cell = result.cell(grid_pos, scheme_pos)
            x = px(cell.parameter)
            points.append(f"{_fmt(x)},{_fmt(py(cell.mean_error))}")
            lo = py(max(0.0, cell.mean_error - cell.std_error))
            hi = py(cell.mean_error + cell.std_error)
            bars.append(
                f'<line x1="{_fmt(x)}" y1="{_fmt(hi)}" x2="{_fmt(x)}" y2="{_fmt(lo)}" '
                f'stroke="{color}" stroke-width="1"/>'
            )
        parts.extend(bars)
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{" ".join(points)}"/>'
        )
        parts.append(
            f'<text x="{_LEFT + plot_w - 6}" y="{_TOP + 16 + 16 * scheme_pos}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12" fill="{color}">{spec.kind}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
