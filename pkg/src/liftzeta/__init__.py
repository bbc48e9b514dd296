"""Exact zeta-integral calculus on K = F_q((u)) and its lift F = K((t))."""

__all__ = [
    "exactnum",
    "localfield",
    "schwartz",
    "zeta1d",
    "setring",
    "lift2d",
    "zeta2d",
    "archfe",
    "cli",
]
