try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str(self.value)

        def __format__(self, format_spec: str) -> str:
            return str(self.value).__format__(format_spec)


class OrbitKind(StrEnum):
    """
    Kinds of automorphism orbits in sl2(F_q). Semisimple kinds are further
    keyed by their determinant.
    """
    zero = "zero"
    nilpotent = "nilpotent"
    split = "split"
    anisotropic = "anisotropic"

    @property
    def is_semisimple(self) -> bool:
        return self in (OrbitKind.split, OrbitKind.anisotropic)

    @property
    def rank(self) -> int:
        return list(OrbitKind).index(self)


class Strategy(StrEnum):
    brute = "brute"
    reduced = "reduced"
    closed = "closed"


class Family(StrEnum):
    """
    Word families with builders. Only `wn`, `wmn` and `w0mn` have a closed
    form determinant law.
    """
    wn = "wn"
    wmn = "wmn"
    w0mn = "w0mn"
    engel_diff = "engel-diff"
    engel_commutator = "engel-commutator"


class SearchGoal(StrEnum):
    missed_orbits = "missed-orbits"
    odd_gamma = "odd-gamma"
    even_gamma = "even-gamma"
    q29_example = "q29-example"


class PropositionId(StrEnum):
    nilpotent_image = "nilpotent-image"
    split_plus_nilpotent = "split-plus-nilpotent"
    all_semisimple = "all-semisimple"
    engel_commutator_trichotomy = "engel-commutator-trichotomy"
    wn_determinant = "wn-determinant"
    missed_orbits = "missed-orbits"
    q29_example = "q29-example"
    wmn_determinant = "wmn-determinant"
    odd_gamma_orbits = "odd-gamma-orbits"
    q3mod4_two_orbits = "q3mod4-two-orbits"
    single_aniso_orbit = "single-aniso-orbit"
    even_gamma_split_orbits = "even-gamma-split-orbits"
    single_split_orbit = "single-split-orbit"
    dirichlet_counts = "dirichlet-counts"


class Status(StrEnum):
    passed = "pass"
    failed = "fail"
    inapplicable = "inapplicable"


class OutputFormat(StrEnum):
    pretty = "pretty"
    json = "json"
    csv = "csv"
