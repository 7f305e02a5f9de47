"""Rigorous rational enclosures of boundary values of conformal maps of the
unit disk, computed from finite approximations of the map, the boundary and
a ULAC function for the boundary."""

__version__ = "0.1.0"
