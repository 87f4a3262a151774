"""Certification toolkit for 2-adically uniformised fake projective planes."""

from __future__ import annotations

__version__ = "0.1.0"
