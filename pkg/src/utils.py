"""
Parsing and formatting helpers shared by the CLI and the grid exporter.
"""

import math


def parse_complex(text: str) -> complex:
    """
    Parse a point given as "re,im" (or a bare real "re").

    Args:
        text: e.g. "0.5,0", "-1,0", "0.25,0.6"

    Returns:
        complex value

    Raises:
        ValueError: malformed or non-finite input
    """
    parts = [p.strip() for p in str(text).split(",")]
    if len(parts) == 1:
        parts.append("0")
    if len(parts) != 2 or not all(parts):
        raise ValueError(f"expected 're,im', got {text!r}")
    re_part, im_part = float(parts[0]), float(parts[1])
    if not (math.isfinite(re_part) and math.isfinite(im_part)):
        raise ValueError(f"point {text!r} is not finite")
    return complex(re_part, im_part)


def format_number(x: float, digits: int = 15) -> str:
    """Fixed significant-digit rendering, locale independent."""
    if x == 0:
        return "0"
    return f"{x:.{digits}g}"


def format_complex(z: complex, digits: int = 15) -> str:
    """Render z as "re,im"."""
    return f"{format_number(z.real, digits)},{format_number(z.imag, digits)}"


def round_to_digits(x: float, digits: int = 15) -> float:
    """Round to the given number of significant digits for machine-readable export."""
    return float(format_number(x, digits))
