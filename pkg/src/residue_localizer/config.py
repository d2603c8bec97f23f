#!/usr/bin/env python3
"""
Settings read from the environment

RESIDUE_LOCALIZER_LOG_LEVEL      logging level name (default WARNING)
RESIDUE_LOCALIZER_DEGREE_MARGIN  warn when deg(phi) exceeds n + margin (default 3)
RESIDUE_LOCALIZER_SAMPLE_POINTS  sample count for the sampled genus check (default 2n+2)
"""
import logging
import os
from dataclasses import dataclass
from typing import Mapping, Optional

logger = logging.getLogger(__name__)

ENV_PREFIX = "RESIDUE_LOCALIZER_"


@dataclass(frozen=True)
class Settings:
    log_level: str = "WARNING"
    degree_margin: int = 3
    sample_points: Optional[int] = None

    def samples_for(self, n: int) -> int:
        return self.sample_points if self.sample_points else 2 * n + 2


def _int_setting(env: Mapping[str, str], key: str, default: Optional[int]) -> Optional[int]:
    raw = env.get(ENV_PREFIX + key)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning("ignoring %s%s=%r: not an integer", ENV_PREFIX, key, raw)
        return default
    if value < 0:
        logger.warning("ignoring %s%s=%r: negative", ENV_PREFIX, key, raw)
        return default
    return value


def load_settings(environ: Optional[Mapping[str, str]] = None) -> Settings:
    env = os.environ if environ is None else environ
    level = env.get(ENV_PREFIX + "LOG_LEVEL", "WARNING").strip().upper() or "WARNING"
    if not isinstance(logging.getLevelName(level), int):
        logger.warning("unknown log level %r, using WARNING", level)
        level = "WARNING"
    return Settings(
        log_level=level,
        degree_margin=_int_setting(env, "DEGREE_MARGIN", 3),
        sample_points=_int_setting(env, "SAMPLE_POINTS", None),
    )
