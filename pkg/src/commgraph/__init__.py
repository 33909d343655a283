"""Semiring matrix algebra and commuting graphs of full matrix semirings."""
