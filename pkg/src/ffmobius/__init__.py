"""Möbius exponential sums over F_q[t], checked exhaustively at small scale."""

__version__ = "0.1.0"
