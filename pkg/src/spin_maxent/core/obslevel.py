"""Registry of named observation levels and the extension/reduction lattice."""

import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

from spin_maxent.core.pauli_algebra import expectation, spin_count
from spin_maxent.exceptions import DimensionMismatch, DuplicateObservable, NotMember, UnknownLevel
from spin_maxent.models.density import DensityMatrix
from spin_maxent.models.levels import ConstraintSet, ObservationLevel
from spin_maxent.models.pauli import PauliString, pauli
from spin_maxent.utils.obs_parser import parse_level_text

logger = logging.getLogger(__name__)

# key -> (observables, inferred, description)
_REGISTRY: Dict[str, Tuple[Tuple[str, ...], bool, str]] = {
    "A1": (("Z",), False, "z component"),
    "B1": (("Z", "X"), False, "z and x components"),
    "C1": (("Z", "X", "Y"), False, "complete single-spin quorum"),
    "A2": (("ZI", "IZ"), False, "z component of each spin"),
    "B2": (("ZI", "IZ", "ZZ"), False, "A2 plus the zz correlation"),
    "C2": (("ZI", "IZ", "ZZ", "IX"), True, "B2 plus x on spin 2"),
    "D2": (("ZI", "IZ", "ZZ", "IX", "IY"), True, "C2 plus y on spin 2"),
    "E2": (("ZZ", "XX"), False, "zz and xx correlations"),
    "G2": (("ZZ", "XX", "XY", "YX", "YY"), False, "zz and all transverse correlations"),
    "H2": (("XX", "XY", "YX", "YY"), False, "G2 without zz"),
    "B3": (("ZZI", "IZZ"), False, "nearest-neighbour zz correlations"),
    "B3x": (("XXI", "IXX"), False, "nearest-neighbour xx correlations"),
    "B3y": (("YYI", "IYY"), False, "nearest-neighbour yy correlations"),
    "C3": (("ZZI", "IZZ", "XXX", "YYY"), False, "B3 plus xxx and yyy"),
}

EXTENSION_CHAINS: Tuple[Tuple[str, ...], ...] = (
    ("A1", "B1", "C1"),
    ("A2", "B2", "C2", "D2"),
    ("E2", "G2"),
    ("H2", "G2"),
    ("B3", "C3"),
)


def _build(key: str) -> ObservationLevel:
    observables, inferred, _ = _REGISTRY[key]
    return ObservationLevel(
        name=key, n=len(observables[0]), observables=observables, inferred=inferred
    )


_LEVELS: Dict[str, ObservationLevel] = {key: _build(key) for key in _REGISTRY}


def registered_levels() -> List[str]:
    """Registry keys in definition order."""
    return list(_LEVELS)


def level_description(key: str) -> str:
    """One-line description of a registered level."""
    return _REGISTRY[key][2]


def named_level(key: str) -> ObservationLevel:
    """Look up a registered level by key ("A1" ... "C3").

    Raises:
        UnknownLevel: key is not registered
    """
    try:
        return _LEVELS[key]
    except KeyError:
        raise UnknownLevel(
            f"Unknown observation level '{key}' (known: {', '.join(_LEVELS)})"
        ) from None


def custom_level(
    observables: Iterable[Union[str, PauliString]], n: Optional[int] = None, name: str = None
) -> ObservationLevel:
    """Level from an explicit list of strings."""
    observables = [pauli(o) for o in observables]
    if n is None:
        if not observables:
            raise ValueError("Spin count is required for an empty level")
        n = observables[0].n
    seen = set()
    for obs in observables:
        if obs in seen:
            raise DuplicateObservable(f"Observable {obs} appears twice")
        seen.add(obs)
    return ObservationLevel(name=name, n=n, observables=observables)


def extend(
    base: ObservationLevel, extra: Iterable[Union[str, PauliString]], name: str = None
) -> ObservationLevel:
    """Superset level base + extra (extras appended in order).

    Raises:
        DuplicateObservable: an extra is already measured
    """
    extra = [pauli(o) for o in extra]
    present = set(base.observables)
    for obs in extra:
        if obs in present:
            raise DuplicateObservable(f"{obs} is already part of the level")
        present.add(obs)
    if not extra:
        return base
    return ObservationLevel(
        name=name, n=base.n, observables=base.observables + tuple(extra), inferred=base.inferred
    )


def reduce(
    base: ObservationLevel, removed: Iterable[Union[str, PauliString]], name: str = None
) -> ObservationLevel:
    """Subset level with the given strings removed.

    Raises:
        NotMember: a removed string is not measured on base
    """
    removed = {pauli(o) for o in removed}
    missing = removed - set(base.observables)
    if missing:
        raise NotMember(
            f"Not part of the level: {', '.join(sorted(str(m) for m in missing))}"
        )
    if not removed:
        return base
    kept = tuple(obs for obs in base.observables if obs not in removed)
    return ObservationLevel(name=name, n=base.n, observables=kept, inferred=base.inferred)


def constraints_from_state(rho: DensityMatrix, level: ObservationLevel) -> ConstraintSet:
    """Exact means of the level's observables in rho.

    Raises:
        DimensionMismatch: rho and level act on different spin counts
    """
    n = rho.n if isinstance(rho, DensityMatrix) else spin_count(len(rho))
    if n != level.n:
        raise DimensionMismatch(f"State has {n} spins, level {level.name or ''} has {level.n}")
    means = tuple(float(min(max(expectation(rho, obs), -1.0), 1.0)) for obs in level.observables)
    return ConstraintSet(level=level, means=means)


def constraint_set(level: ObservationLevel, means: Iterable[float]) -> ConstraintSet:
    """Pair a level with its measured means, in level order."""
    return ConstraintSet(level=level, means=tuple(float(m) for m in means))


def resolve_level(key_or_path: str, n: Optional[int] = None) -> ObservationLevel:
    """Registry key, or path to a level file (one observable expression per line)."""
    if key_or_path in _LEVELS:
        return _LEVELS[key_or_path]
    path = Path(key_or_path)
    if path.is_file():
        level = parse_level_text(path.read_text(encoding="utf-8"), n=n, name=path.stem)
        logger.info(f"Loaded level {path.stem} with {len(level)} observables from {path}")
        return level
    return named_level(key_or_path)
