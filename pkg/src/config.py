import logging
from dataclasses import dataclass, field
from pathlib import Path

import yaml

logger = logging.getLogger(__name__)

FORMATS = ("table", "json")


@dataclass(frozen=True)
class OutputConfig:
    format: str = "table"


@dataclass(frozen=True)
class ScanConfig:
    max_degree_sum: int = 12
    workers: int = 1


@dataclass(frozen=True)
class Config:
    output: OutputConfig = field(default_factory=OutputConfig)
    scan: ScanConfig = field(default_factory=ScanConfig)


def _section(raw, name, allowed):
    section = raw.get(name) or {}
    if not isinstance(section, dict):
        raise ValueError(f"config section {name!r} must be a mapping")
    unknown = sorted(set(section) - set(allowed))
    if unknown:
        raise ValueError(f"unknown key {name}.{unknown[0]} in config")
    return section


def _positive_int(value, key, minimum):
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ValueError(f"{key} must be an integer >= {minimum}, got {value!r}")
    return value


class ConfigLoader:

    @staticmethod
    def load(raw) -> Config:
        raw = raw or {}
        if not isinstance(raw, dict):
            raise ValueError("config root must be a mapping")
        unknown = sorted(set(raw) - {"output", "scan"})
        if unknown:
            raise ValueError(f"unknown config section {unknown[0]!r}")
        output = _section(raw, "output", ("format",))
        scan = _section(raw, "scan", ("max_degree_sum", "workers"))
        fmt = output.get("format", OutputConfig.format)
        if fmt not in FORMATS:
            raise ValueError(f"output.format must be one of {', '.join(FORMATS)}, got {fmt!r}")
        return Config(
            output=OutputConfig(format=fmt),
            scan=ScanConfig(
                max_degree_sum=_positive_int(scan.get("max_degree_sum", ScanConfig.max_degree_sum),
                                             "scan.max_degree_sum", 0),
                workers=_positive_int(scan.get("workers", ScanConfig.workers), "scan.workers", 1),
            ),
        )

    @staticmethod
    def load_from_file(path) -> Config:
        with open(Path(path), encoding="utf-8") as stream:
            raw = yaml.safe_load(stream)
        logger.debug("Loaded configuration from %s", path)
        return ConfigLoader.load(raw)
