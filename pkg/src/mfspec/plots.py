"""Minimal deterministic SVG plots.

Hand-rolled on purpose: rendering must be byte-identical across runs and
machines, and general plotting libraries embed generated ids, timestamps,
or font metrics that break that guarantee. Output is a fixed 640x420
canvas with linear axes; coordinates are rounded to hundredths of a pixel
so float formatting is stable.
"""

from __future__ import annotations

WIDTH, HEIGHT = 640, 420
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 62, 18, 34, 46

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

N_TICKS = 5


def _limits(values: list[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        pad = max(abs(lo) * 0.1, 0.5)
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def _fmt(v: float) -> str:
    s = f"{v:.4g}"
    return "0" if s == "-0" else s


def _px(v: float) -> str:
    return f"{v:.2f}"


def svg_plot(
    series: list[tuple[str, list[float], list[float]]],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    kind: str = "line",
    hlines: list[tuple[str, float]] | None = None,
    bands: list[tuple[float, float]] | None = None,
) -> str:
    """Render labeled (x, y) series to an SVG document string.

    kind is 'line' or 'scatter'. hlines draws labeled dashed horizontal
    rules; bands shades horizontal y-intervals. Series are drawn in input
    order with a fixed palette, so callers control z-order and color by
    ordering their input.
    """
    if kind not in ("line", "scatter"):
        raise ValueError(f"unknown plot kind {kind!r}")
    if not series or any(len(xs) == 0 or len(xs) != len(ys) for _, xs, ys in series):
        raise ValueError("each series needs equal-length, non-empty x and y")
    hlines = hlines or []
    bands = bands or []

    all_x = [v for _, xs, _ in series for v in xs]
    all_y = [v for _, _, ys in series for v in ys]
    all_y += [y for _, y in hlines]
    for lo, hi in bands:
        all_y += [lo, hi]
    x0, x1 = _limits(all_x)
    y0, y1 = _limits(all_y)

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(v: float) -> float:
        return MARGIN_LEFT + (v - x0) / (x1 - x0) * plot_w

    def sy(v: float) -> float:
        return MARGIN_TOP + (y1 - v) / (y1 - y0) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    for lo, hi in bands:
        top, bot = sy(hi), sy(lo)
        out.append(
            f'<rect x="{_px(MARGIN_LEFT)}" y="{_px(top)}" width="{_px(plot_w)}" '
            f'height="{_px(bot - top)}" fill="#cccccc" fill-opacity="0.4"/>'
        )
    # Axes frame and ticks.
    out.append(
        f'<rect x="{_px(MARGIN_LEFT)}" y="{_px(MARGIN_TOP)}" width="{_px(plot_w)}" '
        f'height="{_px(plot_h)}" fill="none" stroke="#333333"/>'
    )
    for i in range(N_TICKS):
        frac = i / (N_TICKS - 1)
        xv = x0 + frac * (x1 - x0)
        yv = y0 + frac * (y1 - y0)
        xp, yp = sx(xv), sy(yv)
        bottom = MARGIN_TOP + plot_h
        out.append(
            f'<line x1="{_px(xp)}" y1="{_px(bottom)}" x2="{_px(xp)}" '
            f'y2="{_px(bottom + 4)}" stroke="#333333"/>'
        )
        out.append(
            f'<text x="{_px(xp)}" y="{_px(bottom + 16)}" font-family="sans-serif" '
            f'font-size="10" text-anchor="middle">{_fmt(xv)}</text>'
        )
        out.append(
            f'<line x1="{_px(MARGIN_LEFT - 4)}" y1="{_px(yp)}" '
            f'x2="{_px(MARGIN_LEFT)}" y2="{_px(yp)}" stroke="#333333"/>'
        )
        out.append(
            f'<text x="{_px(MARGIN_LEFT - 7)}" y="{_px(yp + 3)}" '
            f'font-family="sans-serif" font-size="10" '
            f'text-anchor="end">{_fmt(yv)}</text>'
        )
    for label, y in hlines:
        yp = sy(y)
        out.append(
            f'<line x1="{_px(MARGIN_LEFT)}" y1="{_px(yp)}" '
            f'x2="{_px(MARGIN_LEFT + plot_w)}" y2="{_px(yp)}" '
            f'stroke="#555555" stroke-dasharray="5,3"/>'
        )
        if label:
            out.append(
                f'<text x="{_px(MARGIN_LEFT + plot_w - 4)}" y="{_px(yp - 4)}" '
                f'font-family="sans-serif" font-size="10" '
                f'text-anchor="end">{label}</text>'
            )
    for idx, (label, xs, ys) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        if kind == "line" and len(xs) > 1:
            pts = " ".join(f"{_px(sx(x))},{_px(sy(y))}" for x, y in zip(xs, ys))
            out.append(
                f'<polyline points="{pts}" fill="none" stroke="{color}" '
                f'stroke-width="1.5"/>'
            )
        for x, y in zip(xs, ys):
            out.append(
                f'<circle cx="{_px(sx(x))}" cy="{_px(sy(y))}" r="3" '
                f'fill="{color}"/>'
            )
    # Legend, one row per series, inside the top-left of the frame.
    for idx, (label, _, _) in enumerate(series):
        if not label:
            continue
        color = PALETTE[idx % len(PALETTE)]
        ly = MARGIN_TOP + 12 + 13 * idx
        out.append(
            f'<rect x="{_px(MARGIN_LEFT + 6)}" y="{_px(ly - 7)}" width="8" '
            f'height="8" fill="{color}"/>'
        )
        out.append(
            f'<text x="{_px(MARGIN_LEFT + 18)}" y="{_px(ly)}" '
            f'font-family="sans-serif" font-size="10">{label}</text>'
        )
    if title:
        out.append(
            f'<text x="{_px(WIDTH / 2)}" y="20" font-family="sans-serif" '
            f'font-size="13" text-anchor="middle">{title}</text>'
        )
    if xlabel:
        out.append(
            f'<text x="{_px(MARGIN_LEFT + plot_w / 2)}" y="{_px(HEIGHT - 10)}" '
            f'font-family="sans-serif" font-size="11" '
            f'text-anchor="middle">{xlabel}</text>'
        )
    if ylabel:
        cx, cy = 16, MARGIN_TOP + plot_h / 2
        out.append(
            f'<text x="{_px(cx)}" y="{_px(cy)}" font-family="sans-serif" '
            f'font-size="11" text-anchor="middle" '
            f'transform="rotate(-90 {_px(cx)} {_px(cy)})">{ylabel}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
