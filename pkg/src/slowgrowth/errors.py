"""Exception hierarchy shared by all modules."""

import os


class SlowGrowthError(Exception):
    """Base class for errors raised by this package."""


class HorizonError(SlowGrowthError, ValueError):
    """A finite horizon is too short for the requested computation."""


class ResourceGuardError(HorizonError):
    """An enumeration would exceed the configured memory cap."""


class OrbitCollisionError(SlowGrowthError, ValueError):
    """A rotation orbit landed exactly on an arc endpoint."""

    def __init__(self, iterate, point):
        super().__init__(f"orbit hits an arc endpoint at iterate {iterate} (point {point})")
        self.iterate = iterate
        self.point = point


class ConfigError(SlowGrowthError, ValueError):
    """A JSON configuration could not be interpreted."""


def memory_cap_bytes():
    """Soft memory cap from ``SLOWGROWTH_MAX_MEMORY_MB`` (default 1024 MB)."""
    raw = os.environ.get("SLOWGROWTH_MAX_MEMORY_MB", "1024")
    try:
        return int(float(raw) * 1024 * 1024)
    except ValueError:
        raise ConfigError(f"SLOWGROWTH_MAX_MEMORY_MB is not a number: {raw!r}") from None


def check_memory(count, word_length, what="enumeration"):
    """Raise ResourceGuardError if ``count`` words of ``word_length`` exceed the cap."""
    estimate = count * (word_length + 56)
    if estimate > memory_cap_bytes():
        raise ResourceGuardError(
            f"{what} needs about {estimate // (1024 * 1024)} MB, above SLOWGROWTH_MAX_MEMORY_MB"
        )
