"""Global numerical policy shared by every module.

All scalars are complex doubles compared with a single absolute tolerance.
"""
from __future__ import annotations

import contextlib

DEFAULT_TOL = 1e-9

_state = {"tol": DEFAULT_TOL}


def get_tol() -> float:
    return _state["tol"]


def set_tol(tol: float) -> None:
    if not tol >= 0:
        raise ValueError(f"tolerance must be nonnegative, got {tol!r}")
    _state["tol"] = float(tol)


@contextlib.contextmanager
def tolerance(tol: float):
    """Temporarily override the global tolerance."""
    old = get_tol()
    set_tol(tol)
    try:
        yield
    finally:
        set_tol(old)


def _resolve(tol):
    return get_tol() if tol is None else tol


def close(a, b, tol: float | None = None) -> bool:
    return abs(complex(a) - complex(b)) <= _resolve(tol)


def is_nonneg(x, tol: float | None = None) -> bool:
    """True if ``x`` is real and ``>= 0`` up to the tolerance."""
    tol = _resolve(tol)
    z = complex(x)
    return abs(z.imag) <= tol and z.real >= -tol


def nearest_int(x, tol: float | None = None) -> int:
    """Round ``x`` to an integer, raising if it is not one within tolerance."""
    tol = _resolve(tol)
    z = complex(x)
    n = round(z.real)
    if abs(z - n) > tol:
        raise ValueError(f"{x!r} is not an integer within tol={tol}")
    return int(n)
