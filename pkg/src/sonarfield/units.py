"""Decibel conversions and the unit constants used across the package.

Conventions: ranges are in nautical miles (nmi) unless a name says
otherwise, array lengths are converted to metres where a formula needs
them, and one nautical mile is taken as two kiloyards. All functions are
pure.
"""

from __future__ import annotations

import math

NMI_PER_KILOYARD = 0.5
KILOYARDS_PER_NMI = 2.0
METRES_PER_NMI = 1852.0
DEFAULT_SOUND_SPEED_MPS = 1500.0


def to_db(x: float) -> float:
    """Convert a positive linear ratio to decibels, 10*log10(x)."""
    if not x > 0:
        raise ValueError(f"decibel conversion needs a positive value, got {x!r}")
    return 10.0 * math.log10(x)


def from_db(level_db: float) -> float:
    """Invert :func:`to_db`: return 10**(level_db / 10)."""
    return 10.0 ** (level_db / 10.0)


def nmi_to_metres(r_nmi: float) -> float:
    return r_nmi * METRES_PER_NMI


def nmi_to_kiloyards(r_nmi: float) -> float:
    return r_nmi * KILOYARDS_PER_NMI


def kiloyards_to_nmi(r_kyd: float) -> float:
    return r_kyd * NMI_PER_KILOYARD
