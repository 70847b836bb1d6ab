"""Heat-map explainability: normalize a contribution matrix and render it.

Rendering is a pure function of its input: no timestamps, no randomness,
fixed number formatting, so identical specs produce identical bytes.
The color ramp is a single-hue linear blend from RAMP_LOW (#f7fbff) to
RAMP_HIGH (#08306b); an all-equal matrix normalizes to 0.5 everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping
from xml.sax.saxutils import escape

from .catalog import ARCHITECTURE_ORDER, ArchitectureId
from .dataset import format_number
from .errors import EmptyMatrixError
from .matcher import ContributionMatrix


class NormalizationMode(str, Enum):
    GLOBAL_LINEAR = "global_linear"
    PER_ATTRIBUTE_LINEAR = "per_attribute_linear"


@dataclass(frozen=True)
class HeatMapSpec:
    matrix: ContributionMatrix
    normalization: NormalizationMode = NormalizationMode.GLOBAL_LINEAR
    cell_annotations: bool = True
    title: str = "Architecture contribution heat map"


RAMP_LOW = (0xF7, 0xFB, 0xFF)
RAMP_HIGH = (0x08, 0x30, 0x6B)


def ramp_color(normalized: float) -> str:
    """Hex color on the documented light-to-dark ramp for a value in [0, 1]."""
    t = min(1.0, max(0.0, normalized))
    channels = (round(lo + (hi - lo) * t) for lo, hi in zip(RAMP_LOW, RAMP_HIGH))
    return "#" + "".join(f"{c:02x}" for c in channels)


def _rescale(value: float, low: float, high: float) -> float:
    if high == low:
        return 0.5
    return (value - low) / (high - low)


def normalize(
    matrix: ContributionMatrix,
    mode: NormalizationMode = NormalizationMode.GLOBAL_LINEAR,
) -> dict[str, dict[ArchitectureId, float]]:
    """Map entries into [0, 1]: min->0 and max->1 globally, or per attribute column."""
    if not matrix.attributes:
        raise EmptyMatrixError("contribution matrix has no selected attributes")
    mode = NormalizationMode(mode)

    out: dict[str, dict[ArchitectureId, float]] = {}
    if mode is NormalizationMode.GLOBAL_LINEAR:
        entries = [
            matrix.entry(a, arch) for a in matrix.attributes for arch in ARCHITECTURE_ORDER
        ]
        low, high = min(entries), max(entries)
        for attribute in matrix.attributes:
            out[attribute] = {
                arch: _rescale(matrix.entry(attribute, arch), low, high)
                for arch in ARCHITECTURE_ORDER
            }
    else:
        for attribute in matrix.attributes:
            column = [matrix.entry(attribute, arch) for arch in ARCHITECTURE_ORDER]
            low, high = min(column), max(column)
            out[attribute] = {
                arch: _rescale(matrix.entry(attribute, arch), low, high)
                for arch in ARCHITECTURE_ORDER
            }
    return out


def normalized_to_json_dict(
    values: Mapping[str, Mapping[ArchitectureId, float]], mode: NormalizationMode
) -> dict:
    return {
        "mode": NormalizationMode(mode).value,
        "values": {
            attribute: {arch.value: cells[arch] for arch in ARCHITECTURE_ORDER}
            for attribute, cells in values.items()
        },
    }


# Fixed SVG geometry (pixels).
_CELL_W = 72
_CELL_H = 36
_LEFT = 200
_TOP = 96
_LEGEND_H = 56


def _arch_label(arch: ArchitectureId) -> str:
    return arch.value.replace("_", " ")


def render_svg(spec: HeatMapSpec) -> bytes:
    """Standalone SVG: architectures as rows, selected attributes as columns."""
    normalized = normalize(spec.matrix, spec.normalization)
    attributes = spec.matrix.attributes
    width = _LEFT + _CELL_W * len(attributes) + 24
    height = _TOP + _CELL_H * len(ARCHITECTURE_ORDER) + _LEGEND_H + 24

    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="DejaVu Sans, Verdana, sans-serif">'
    )
    parts.append(f'<rect width="{width}" height="{height}" fill="#ffffff"/>')
    parts.append(
        f'<text x="{width // 2}" y="26" text-anchor="middle" font-size="16" '
        f'fill="#111111">{escape(spec.title)}</text>'
    )

    # column labels, slanted to fit long attribute names
    for col, attribute in enumerate(attributes):
        x = _LEFT + col * _CELL_W + _CELL_W // 2
        parts.append(
            f'<text x="{x}" y="{_TOP - 8}" text-anchor="start" font-size="11" fill="#333333" '
            f'transform="rotate(-35 {x} {_TOP - 8})">{escape(attribute)}</text>'
        )

    for row, arch in enumerate(ARCHITECTURE_ORDER):
        y = _TOP + row * _CELL_H
        parts.append(
            f'<text x="{_LEFT - 8}" y="{y + _CELL_H // 2 + 4}" text-anchor="end" '
            f'font-size="12" fill="#333333">{escape(_arch_label(arch))}</text>'
        )
        for col, attribute in enumerate(attributes):
            x = _LEFT + col * _CELL_W
            value = normalized[attribute][arch]
            parts.append(
                f'<rect x="{x}" y="{y}" width="{_CELL_W}" height="{_CELL_H}" '
                f'fill="{ramp_color(value)}" stroke="#ffffff" stroke-width="1"/>'
            )
            if spec.cell_annotations:
                raw = spec.matrix.entry(attribute, arch)
                text_fill = "#ffffff" if value > 0.55 else "#1a1a1a"
                parts.append(
                    f'<text x="{x + _CELL_W // 2}" y="{y + _CELL_H // 2 + 4}" '
                    f'text-anchor="middle" font-size="11" fill="{text_fill}">'
                    f"{escape(format_number(raw))}</text>"
                )

    # legend: five fixed stops on the ramp
    legend_y = _TOP + _CELL_H * len(ARCHITECTURE_ORDER) + 20
    parts.append(
        f'<text x="{_LEFT}" y="{legend_y + 12}" text-anchor="end" font-size="11" '
        f'fill="#333333">normalized&#160;</text>'
    )
    for i, stop in enumerate((0.0, 0.25, 0.5, 0.75, 1.0)):
        x = _LEFT + i * 56
        parts.append(
            f'<rect x="{x}" y="{legend_y}" width="40" height="16" '
            f'fill="{ramp_color(stop)}" stroke="#cccccc" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x + 20}" y="{legend_y + 30}" text-anchor="middle" '
            f'font-size="10" fill="#333333">{stop:.2f}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts).encode("utf-8")


def render_text(spec: HeatMapSpec) -> str:
    """Fixed-width table of normalized values, two decimals per cell."""
    normalized = normalize(spec.matrix, spec.normalization)
    attributes = spec.matrix.attributes

    label_width = max(len(_arch_label(a)) for a in ARCHITECTURE_ORDER)
    widths = [max(len(a), 4) for a in attributes]

    lines = [spec.title, ""]
    header = " " * label_width + "  " + "  ".join(
        a.rjust(w) for a, w in zip(attributes, widths)
    )
    lines.append(header)
    for arch in ARCHITECTURE_ORDER:
        cells = "  ".join(
            f"{normalized[attribute][arch]:.2f}".rjust(w)
            for attribute, w in zip(attributes, widths)
        )
        lines.append(f"{_arch_label(arch):<{label_width}}  {cells}")
    return "\n".join(lines) + "\n"
