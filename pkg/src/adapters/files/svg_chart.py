"""
Minimal SVG line chart of the CHSH value against the exponent
"""
from pathlib import Path
from typing import Sequence, Union
from src.config.constants import TSIRELSON_BOUND, NO_SIGNALING_BOUND
from src.config.settings import get_settings
from src.domain.entities.records import SweepRow
from src.utilities.logger import get_logger

logger = get_logger(__name__)
settings = get_settings()

MARGIN = 60
Y_MAX = 4.2


def render_sweep_svg(rows: Sequence[SweepRow]) -> str:
    """Polyline of B(m), a dot at (2, 2 sqrt2), reference lines at 2 sqrt2 and 4"""
    width, height = settings.svg_width, settings.svg_height
    m_min = min(row.m for row in rows)
    m_max = max(row.m for row in rows)
    if m_max == m_min:
        m_max = m_min + 1.0
    x_lo, x_hi = min(m_min, 0.0), max(m_max, 2.0)

    def sx(m: float) -> float:
        return MARGIN + (m - x_lo) / (x_hi - x_lo) * (width - 2 * MARGIN)

    def sy(b: float) -> float:
        return height - MARGIN - b / Y_MAX * (height - 2 * MARGIN)

    points = " ".join(f"{sx(row.m):.3f},{sy(row.chsh_engine):.3f}" for row in rows)
    left, right = sx(x_lo), sx(x_hi)
    ticks = "\n".join(
        f'  <text x="{MARGIN - 8}" y="{sy(b) + 4:.3f}" font-size="12" text-anchor="end">{b:g}</text>'
        for b in (0, 1, 2, 3, 4)
    )

    return f"""<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}">
  <rect x="0" y="0" width="{width}" height="{height}" fill="white"/>
  <line x1="{left:.3f}" y1="{sy(0):.3f}" x2="{right:.3f}" y2="{sy(0):.3f}" stroke="black"/>
  <line x1="{left:.3f}" y1="{sy(0):.3f}" x2="{left:.3f}" y2="{sy(Y_MAX):.3f}" stroke="black"/>
{ticks}
  <text x="{width / 2:.1f}" y="{height - 15}" font-size="14" text-anchor="middle">m</text>
  <text x="20" y="{height / 2:.1f}" font-size="14" text-anchor="middle">B</text>
  <line id="tsirelson" x1="{left:.3f}" y1="{sy(TSIRELSON_BOUND):.3f}" x2="{right:.3f}" y2="{sy(TSIRELSON_BOUND):.3f}" stroke="gray" stroke-dasharray="6,4"/>
  <line id="asymptote" x1="{left:.3f}" y1="{sy(NO_SIGNALING_BOUND):.3f}" x2="{right:.3f}" y2="{sy(NO_SIGNALING_BOUND):.3f}" stroke="gray" stroke-dasharray="2,4"/>
  <polyline id="chsh" fill="none" stroke="steelblue" stroke-width="2" points="{points}"/>
  <circle id="born" cx="{sx(2.0):.3f}" cy="{sy(TSIRELSON_BOUND):.3f}" r="5" fill="crimson"/>
</svg>
"""


def write_sweep_svg(rows: Sequence[SweepRow], path: Union[str, Path]) -> Path:
    target = Path(path)
    target.write_text(render_sweep_svg(rows), encoding="utf-8")
    logger.info(f"Wrote sweep chart with {len(rows)} points to {target}")
    return target
