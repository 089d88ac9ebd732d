import os
try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Mapping, Optional

from . import logger
from .constants import (BUDGET_ENV_VAR, CHUNK_SIZE, DEFAULT_BUDGET,
                        DEFAULT_Q_LIST, GENSET_QMAX, PRIME_CEILING,
                        SEARCH_FACTOR)
from .paths import DEFAULTS_PATH

_CURRENT: Optional["Settings"] = None


def missing_keys(
    reference: Mapping[str, Any], other: Mapping[str, Any]
) -> list[str]:
    return [key_ for key_ in reference if key_ not in other]


class Settings:
    """
    Enumeration budgets and sweep defaults. Handles (de-)serialization from
    TOML and the `LIEIMAGE_BUDGET` environment override.
    """
    def __init__(
        self,
        budget: int,
        genset_qmax: int,
        search_factor: int,
        prime_ceiling: int,
        jobs: int,
        chunk_size: int,
        q_list: list[int],
    ):
        """
        :param budget: Maximum number of word evaluations a brute force run
        may perform.
        :type budget: int
        :param genset_qmax: Largest q accepted by generation sweeps.
        :type genset_qmax: int
        :param search_factor: Witness searches try exponents up to
        `search_factor * (q - 1)`.
        :type search_factor: int
        :param prime_ceiling: Upper bound for the arithmetic progression
        prime search.
        :type prime_ceiling: int
        :param jobs: Worker processes for parallel sweeps. 1 runs inline.
        :type jobs: int
        :param chunk_size: Number of grid points evaluated per work unit.
        :type chunk_size: int
        :param q_list: Default field sizes for verification suites.
        :type q_list: list[int]
        """
        self._budget = budget
        self._genset_qmax = genset_qmax
        self._search_factor = search_factor
        self._prime_ceiling = prime_ceiling
        self._jobs = jobs
        self._chunk_size = chunk_size
        self._q_list = q_list
        self.update(**self._serialize())

    @property
    def budget(self) -> int:
        return self._budget

    @budget.setter
    def budget(self, value: int) -> None:
        self._budget = max(1, int(value))

    @property
    def genset_qmax(self) -> int:
        return self._genset_qmax

    @genset_qmax.setter
    def genset_qmax(self, value: int) -> None:
        self._genset_qmax = max(3, int(value))

    @property
    def search_factor(self) -> int:
        return self._search_factor

    @search_factor.setter
    def search_factor(self, value: int) -> None:
        self._search_factor = max(1, int(value))

    @property
    def prime_ceiling(self) -> int:
        return self._prime_ceiling

    @prime_ceiling.setter
    def prime_ceiling(self, value: int) -> None:
        self._prime_ceiling = max(3, int(value))

    @property
    def jobs(self) -> int:
        return self._jobs

    @jobs.setter
    def jobs(self, value: int) -> None:
        self._jobs = max(1, int(value))

    @property
    def chunk_size(self) -> int:
        return self._chunk_size

    @chunk_size.setter
    def chunk_size(self, value: int) -> None:
        self._chunk_size = max(1024, int(value))

    @property
    def q_list(self) -> list[int]:
        return self._q_list

    @q_list.setter
    def q_list(self, value: list[int]) -> None:
        self._q_list = [int(q) for q in value]

    def _serialize(self) -> dict[str, Any]:
        """
        Serialize the Settings object into a dictionary.

        :return: The serialized dict.
        :rtype: dict[str, Any]
        """
        return {
            attr: getattr(self, f"_{attr}") for attr in self.defaults()
        }

    @classmethod
    def _deserialize(cls, dictionary: dict[str, Any]) -> "Settings":
        """
        Deserialize a settings table back into a Settings object. Missing
        keys fall back to defaults, unknown keys are dropped.

        :param dictionary: The settings table, usually read from TOML.
        :type dictionary: dict[str, Any]
        :return: The resulting Settings object.
        :rtype: Settings
        """
        defaults = cls.defaults()

        for key_ in missing_keys(defaults, dictionary):
            logger.info(
                f"Adding missing settings key {key_} with default "
                f"{defaults[key_]}."
            )
            dictionary[key_] = defaults[key_]

        for key_ in missing_keys(dictionary, defaults):
            logger.info(f"Removing additional settings key {key_}.")
            dictionary.pop(key_)

        return cls(**dictionary)

    @staticmethod
    def defaults() -> dict[str, Any]:
        """
        Generates usable default settings as deserializable dictionary.

        :return: The default settings as dictionary.
        :rtype: dict[str, Any]
        """
        return {
            "budget": DEFAULT_BUDGET,
            "genset_qmax": GENSET_QMAX,
            "search_factor": SEARCH_FACTOR,
            "prime_ceiling": PRIME_CEILING,
            "jobs": 1,
            "chunk_size": CHUNK_SIZE,
            "q_list": list(DEFAULT_Q_LIST),
        }

    @classmethod
    def with_defaults(cls) -> "Settings":
        return cls(**cls.defaults())

    @classmethod
    def load(cls, path: Optional[Path | str] = None) -> "Settings":
        """
        Load settings from a TOML file (the `[lieimage]` table, or the top
        level if absent) and apply the environment budget override.

        :param path: TOML file. Defaults only when `None`.
        :type path: Optional[Path | str]
        :raises ValueError: The budget environment variable is not an
        integer.
        :return: The loaded settings.
        :rtype: Settings
        """
        if path is None:
            settings = cls.with_defaults()
        else:
            with open(path, mode="rb") as fp:
                table = tomllib.load(fp)
            settings = cls._deserialize(dict(table.get("lieimage", table)))

        env_budget = os.environ.get(BUDGET_ENV_VAR)
        if env_budget:
            try:
                settings.budget = int(env_budget)
            except ValueError:
                raise ValueError(
                    f"{BUDGET_ENV_VAR} must be an integer, got {env_budget!r}"
                ) from None
            logger.debug(
                f"Budget overridden by {BUDGET_ENV_VAR}: {settings.budget}"
            )
        return settings

    def update(self, **kwargs: Any) -> None:
        """
        Update multiple settings at once. Pass settings as keyword arguments,
        e.g. using **dict.
        """
        for key_, value in kwargs.items():
            setattr(self, key_, value)


def current() -> Settings:
    """
    The process wide settings, loaded lazily from the shipped defaults with
    the environment override.
    """
    global _CURRENT
    if _CURRENT is None:
        _CURRENT = Settings.load(DEFAULTS_PATH)
    return _CURRENT


def use(settings: Optional[Settings]) -> None:
    """
    Replace the process wide settings. `None` forces a reload on next use.
    """
    global _CURRENT
    _CURRENT = settings
