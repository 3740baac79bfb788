"""
Run configuration for lawson-forge.

This module handles loading and validation of JSON run configurations and
turns Cauchy-data presets into CauchyData objects.
"""

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Mapping, Optional

from ..core.errors import ConfigError
from ..core.models import DEFAULT_TOLERANCES, Ambient, CauchyData, Tolerances, UEdgeData, VEdgeData

PRESETS = ("constant", "random", "explicit")


def _complex(value, where: str) -> complex:
    """Complex numbers are written as [re, im] or as a plain real"""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ConfigError(f"{where}: expected a number or [re, im], got {value!r}")


@dataclass
class CauchyPreset:
    """How the bottom row and left column of Lax data are produced"""
    preset: str = "constant"
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.preset not in PRESETS:
            raise ConfigError(f"unknown Cauchy preset {self.preset!r} (expected one of {', '.join(PRESETS)})")

    def build(self, width: int, height: int, seed: Optional[int] = None) -> CauchyData:
        p = self.params
        try:
            if self.preset == "constant":
                return CauchyData.constant(width, height,
                                           a=_complex(p.get("a", 1.0), "cauchy.a"),
                                           u=float(p.get("u", 1.0)),
                                           b=_complex(p.get("b", 1.0), "cauchy.b"),
                                           v=float(p.get("v", 1.0)))
            if self.preset == "random":
                return CauchyData.random(width, height,
                                         seed=int(seed if seed is not None else p.get("seed", 0)),
                                         a_abs_max=float(p.get("a_abs_max", 0.6)),
                                         u_range=tuple(p.get("u_range", (0.75, 1.35))),
                                         v_range=tuple(p.get("v_range", (0.75, 1.35))))
            row0 = [UEdgeData(_complex(e["a"], "cauchy.row0.a"), float(e["u"])) for e in p.get("row0", [])]
            col0 = [VEdgeData(_complex(e["b"], "cauchy.col0.b"), float(e["v"])) for e in p.get("col0", [])]
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"malformed {self.preset} Cauchy data: {exc}") from exc
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"invalid {self.preset} Cauchy data: {exc}") from exc
        if len(row0) != width - 1 or len(col0) != height - 1:
            raise ConfigError(f"explicit Cauchy data has {len(row0)} row and {len(col0)} column edges, "
                              f"expected {width - 1} and {height - 1}")
        return CauchyData(tuple(row0), tuple(col0))


@dataclass
class RunConfig:
    """Everything a generate, lawson or verify run needs"""
    width: int = 5
    height: int = 5
    cauchy: CauchyPreset = field(default_factory=CauchyPreset)
    gammas: List[float] = field(default_factory=lambda: [math.pi / 4])
    ambients: List[Ambient] = field(default_factory=lambda: [Ambient.R3, Ambient.S3])
    out_dir: str = "out"
    tolerance_scale: float = 1.0
    seed: Optional[int] = None
    scale: float = 1.0
    limit_gammas: List[float] = field(default_factory=list)
    strict: bool = False

    def __post_init__(self):
        if not (isinstance(self.width, int) and isinstance(self.height, int)) or self.width < 1 or self.height < 1:
            raise ConfigError(f"lattice dimensions must be positive integers, got {self.width!r}×{self.height!r}")
        self.ambients = [a if isinstance(a, Ambient) else _ambient(a) for a in self.ambients]
        self.gammas = [float(g) for g in self.gammas]
        for g in self.gammas:
            if not (0.0 < g < math.pi / 2):
                raise ConfigError(f"spectral angle {g!r} outside (0, π/2)")
        self.limit_gammas = [float(g) for g in self.limit_gammas]
        if not (self.tolerance_scale > 0 and math.isfinite(self.tolerance_scale)):
            raise ConfigError(f"tolerance scale must be positive, got {self.tolerance_scale!r}")
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise ConfigError(f"sphere scale must be positive, got {self.scale!r}")
        if self.seed is not None and not (isinstance(self.seed, int) and 0 <= self.seed < 2 ** 64):
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")

    @property
    def tolerances(self) -> Tolerances:
        return DEFAULT_TOLERANCES.scaled(self.tolerance_scale)

    def build_cauchy(self) -> CauchyData:
        return self.cauchy.build(self.width, self.height, self.seed)

    def to_dict(self) -> Dict[str, Any]:
        d = asdict(self)
        d["cauchy"] = dict(self.cauchy.params, preset=self.cauchy.preset)
        d["ambients"] = [a.value for a in self.ambients]
        return d

    def digest(self) -> str:
        """Hash of the canonical JSON form, recorded as provenance"""
        text = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


def _ambient(value) -> Ambient:
    try:
        return Ambient(value)
    except ValueError as exc:
        raise ConfigError(f"unknown ambient {value!r} (expected r3, s3 or sphere)") from exc


class ConfigLoader:
    """Handles loading and validation of run configuration files"""

    _KEYS = {"width", "height", "cauchy", "gammas", "ambients", "out_dir",
             "tolerance_scale", "seed", "scale", "limit_gammas", "strict"}

    @staticmethod
    def from_mapping(data: Mapping[str, Any]) -> RunConfig:
        """
        Build a RunConfig from a parsed JSON object

        Raises:
            ConfigError: unknown keys, wrong types or out-of-range values
        """
        if not isinstance(data, Mapping):
            raise ConfigError("configuration must be a JSON object")
        unknown = set(data) - ConfigLoader._KEYS
        if unknown:
            raise ConfigError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
        kwargs = dict(data)
        cauchy = kwargs.pop("cauchy", None)
        if cauchy is not None:
            if not isinstance(cauchy, Mapping):
                raise ConfigError("cauchy must be an object with a 'preset' key")
            params = {k: v for k, v in cauchy.items() if k != "preset"}
            kwargs["cauchy"] = CauchyPreset(cauchy.get("preset", "constant"), params)
        try:
            return RunConfig(**kwargs)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"invalid configuration: {exc}") from exc

    @staticmethod
    def load_config(path: str) -> RunConfig:
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError as exc:
            raise ConfigError(f"could not find configuration file {path}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in configuration file {path}: {exc}") from exc
        return ConfigLoader.from_mapping(data)
