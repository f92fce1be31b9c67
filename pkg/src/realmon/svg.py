"""Dependency-free SVG line charts for sweep records."""

from __future__ import annotations

import math

WIDTH, HEIGHT = 640, 440
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 40, 55
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def _ticks(lo: float, hi: float, n: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(1, n - 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = mult * mag
        if step >= raw:
            break
    start = math.ceil(lo / step) * step
    out = []
    t = start
    while t <= hi + 1e-12:
        out.append(round(t, 12))
        t += step
    return out or [lo, hi]


def _fmt_tick(v: float) -> str:
    if v == 0:
        return "0"
    if abs(v) >= 100 or abs(v) < 0.01:
        return f"{v:.1e}"
    return f"{v:.4g}"


def render_line_chart(series, title: str = "", xlabel: str = "", ylabel: str = "") -> str:
    """Render [(label, xs, ys, errs-or-None), ...] into an SVG string."""
    if not series:
        raise ValueError("need at least one series")
    xs_all = [x for _, xs, _, _ in series for x in xs]
    ys_all = [y for _, _, ys, _ in series for y in ys]
    for label, xs, ys, errs in series:
        if len(xs) != len(ys) or (errs is not None and len(errs) != len(xs)):
            raise ValueError(f"series {label!r} has mismatched lengths")
        if errs is not None:
            ys_all.extend(y + e for y, e in zip(ys, errs))
            ys_all.extend(y - e for y, e in zip(ys, errs))
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all + [0.0]), max(ys_all + [0.0])
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    pad = 0.05 * (y_hi - y_lo) or 0.5
    y_lo, y_hi = y_lo - pad, y_hi + pad
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def px(x):
        return MARGIN_L + plot_w * (x - x_lo) / (x_hi - x_lo)

    def py(y):
        return MARGIN_T + plot_h * (1.0 - (y - y_lo) / (y_hi - y_lo))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="15">{title}</text>',
    ]
    for tx in _ticks(x_lo, x_hi):
        x = px(tx)
        parts.append(
            f'<line x1="{x:.1f}" y1="{MARGIN_T}" x2="{x:.1f}" y2="{MARGIN_T + plot_h}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.1f}" y="{MARGIN_T + plot_h + 18}" text-anchor="middle">{_fmt_tick(tx)}</text>'
        )
    for ty in _ticks(y_lo, y_hi):
        y = py(ty)
        parts.append(
            f'<line x1="{MARGIN_L}" y1="{y:.1f}" x2="{MARGIN_L + plot_w}" y2="{y:.1f}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{MARGIN_L - 8}" y="{y + 4:.1f}" text-anchor="end">{_fmt_tick(ty)}</text>'
        )
    parts.append(
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#333333"/>'
    )
    for k, (label, xs, ys, errs) in enumerate(series):
        color = COLORS[k % len(COLORS)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>')
        if errs is not None:
            for x, y, e in zip(xs, ys, errs):
                if e > 0:
                    parts.append(
                        f'<line x1="{px(x):.2f}" y1="{py(y - e):.2f}" '
                        f'x2="{px(x):.2f}" y2="{py(y + e):.2f}" stroke="{color}" stroke-width="1"/>'
                    )
        lx = MARGIN_L + plot_w - 150
        ly = MARGIN_T + 16 + 18 * k
        parts.append(f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 24}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        parts.append(f'<text x="{lx + 30}" y="{ly}">{label}</text>')
    parts.append(
        f'<text x="{MARGIN_L + plot_w / 2:.1f}" y="{HEIGHT - 14}" text-anchor="middle">{xlabel}</text>'
    )
    parts.append(
        f'<text x="18" y="{MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {MARGIN_T + plot_h / 2:.1f})">{ylabel}</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_sweep_chart(records, config) -> str:
    """Two-series chart (monitored and probe reality gains) for sweep records."""
    xs = [r.theta_m for r in records]
    d_x = [r.dR_X for r in records]
    d_xp = [r.dR_Xp for r in records]
    e_x = [r.se_dR_X for r in records] if records[0].se_dR_X is not None else None
    e_xp = [r.se_dR_Xp for r in records] if records[0].se_dR_Xp is not None else None
    if config.grid_kind == "axis_theta":
        xlabel = "observable axis angle theta (rad)"
    elif config.grid_kind == "epsilon":
        xs = [r.epsilon for r in records]
        xlabel = "measurement intensity epsilon"
    else:
        xlabel = "monitoring strength theta_m (rad)"
    title = f"{config.scenario} ({config.path})"
    return render_line_chart(
        [("dR monitored", xs, d_x, e_x), ("dR probe", xs, d_xp, e_xp)],
        title=title,
        xlabel=xlabel,
        ylabel="reality gain (bits)",
    )
