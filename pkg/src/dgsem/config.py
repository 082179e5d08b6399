"""Plain key=value run configuration.

A config is UTF-8 text with whitespace- or newline-separated key=value
tokens and '#' comments.  Scalar values describe a single run; the keys
flux, N, and ma also accept comma-separated lists, which turns the config
into a study matrix (the cartesian product is swept).  Unknown keys and
invalid enum values are hard errors.
"""

from dataclasses import dataclass, field

from . import cases, fluxes
from .dg import SPLIT, STANDARD, SchemeConfig, VOLUME_MODES
from .euler import GasParams
from .operators import GAUSS, LGL


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


VALID_KEYS = (
    "nodes", "volume", "flux", "N", "case", "ma", "levels", "cfl", "t_end",
    "gamma", "out", "threads", "backend", "entropy_trace", "conservation_trace",
)

_BOOL = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}


@dataclass(frozen=True)
class RunConfig:
    """One fully-specified run (scheme, case, ladder and output options)."""

    scheme: SchemeConfig
    case: str = cases.DENSITY_WAVE
    mach: str = "0.2"
    levels: int = 4
    cfl: float = 0.5
    t_end: float = 1.0
    out: str = None
    threads: int = None
    backend: str = None
    entropy_trace: bool = False
    conservation_trace: bool = False

    @property
    def wave(self) -> cases.DensityWaveConfig:
        return cases.MACH_PRESETS[self.mach]


@dataclass(frozen=True)
class StudyMatrix:
    """Cartesian sweep over flux kinds, degrees, and Mach presets."""

    base: RunConfig
    flux_kinds: tuple
    degrees: tuple
    machs: tuple

    def run_configs(self):
        from dataclasses import replace

        out = []
        for flux in self.flux_kinds:
            for deg in self.degrees:
                for mach in self.machs:
                    scheme = replace(self.base.scheme, flux=flux, degree=deg)
                    out.append(replace(self.base, scheme=scheme, mach=mach))
        return out


def _parse_tokens(text: str):
    pairs = []
    for raw_line in text.splitlines():
        line = raw_line.split("#", 1)[0]
        for token in line.split():
            if "=" not in token:
                raise ConfigError(f"expected key=value, got {token!r}")
            key, value = token.split("=", 1)
            if key not in VALID_KEYS:
                raise ConfigError(f"unknown key {key!r}; valid keys: {', '.join(VALID_KEYS)}")
            pairs.append((key, value))
    return dict(pairs)


def _enum(key, value, allowed):
    if value not in allowed:
        raise ConfigError(
            f"invalid value {value!r} for {key}; expected one of: {', '.join(allowed)}"
        )
    return value


def _positive_int(key, value):
    try:
        out = int(value)
    except ValueError:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from None
    if out < 1:
        raise ConfigError(f"{key} must be >= 1, got {out}")
    return out


def _positive_float(key, value):
    try:
        out = float(value)
    except ValueError:
        raise ConfigError(f"{key} must be a number, got {value!r}") from None
    if not out > 0.0:
        raise ConfigError(f"{key} must be positive, got {out}")
    return out


def parse_config(text: str):
    """Parse config text into a RunConfig or, with list values, a StudyMatrix."""
    kv = _parse_tokens(text)

    nodes = _enum("nodes", kv.get("nodes", LGL), (GAUSS, LGL))
    volume = _enum("volume", kv.get("volume", STANDARD), VOLUME_MODES)
    if volume == SPLIT and nodes == GAUSS:
        raise ConfigError("volume=split requires nodes=lgl (split form needs LGL collocation)")

    flux_list = tuple(
        _enum("flux", f, fluxes.FLUX_KINDS) for f in kv.get("flux", fluxes.LLF).split(",")
    )
    degree_list = tuple(_positive_int("N", s) for s in kv.get("N", "3").split(","))
    mach_list = tuple(
        _enum("ma", m, tuple(cases.MACH_PRESETS)) for m in kv.get("ma", "0.2").split(",")
    )

    case = _enum("case", kv.get("case", cases.DENSITY_WAVE), cases.CASES)
    cfl = _positive_float("cfl", kv.get("cfl", "0.5"))
    if cfl > 1.0:
        raise ConfigError(f"cfl must lie in (0, 1], got {cfl}")
    gamma = _positive_float("gamma", kv.get("gamma", "1.4"))

    def build(flux, degree, mach):
        scheme = SchemeConfig(nodes=nodes, degree=degree, volume=volume,
                              flux=flux, gas=GasParams(gamma=gamma))
        return RunConfig(
            scheme=scheme, case=case, mach=mach,
            levels=_positive_int("levels", kv.get("levels", "4")),
            cfl=cfl,
            t_end=_positive_float("t_end", kv.get("t_end", "1.0")),
            out=kv.get("out"),
            threads=_positive_int("threads", kv["threads"]) if "threads" in kv else None,
            backend=kv.get("backend"),
            entropy_trace=_parse_bool("entropy_trace", kv.get("entropy_trace", "false")),
            conservation_trace=_parse_bool("conservation_trace", kv.get("conservation_trace", "false")),
        )

    if len(flux_list) == len(degree_list) == len(mach_list) == 1:
        return build(flux_list[0], degree_list[0], mach_list[0])
    base = build(flux_list[0], degree_list[0], mach_list[0])
    return StudyMatrix(base=base, flux_kinds=flux_list, degrees=degree_list, machs=mach_list)


def _parse_bool(key, value):
    try:
        return _BOOL[value.lower()]
    except KeyError:
        raise ConfigError(f"{key} must be a boolean, got {value!r}") from None


def load_config(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
