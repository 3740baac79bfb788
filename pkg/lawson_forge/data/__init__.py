"""
Data module for lawson-forge.

Contains run configuration loading, native net file reading and writing,
and OBJ export.
"""

from .config_loader import CauchyPreset, ConfigLoader, RunConfig
from .net_loader import NetFile, NetLoader
from .obj_exporter import ObjExporter, stereographic

__all__ = [
    "CauchyPreset",
    "ConfigLoader",
    "RunConfig",
    "NetFile",
    "NetLoader",
    "ObjExporter",
    "stereographic",
]
