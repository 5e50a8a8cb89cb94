"""
Parameter sets and the generator naming scheme shared by every layer.

Ids are fixed strings so golden files stay stable:

    sim:A:p:q        [p ∼ᴬ q]
    rel:R:p1,p2      [(p1,p2) ∈ R]
    alpha:A:p:q      [αᴬ(p) = q]       (also beta / gamma in the composable-pairs layer)
    equiv:A:k:p      [≡ₖ p]            (k = copy index in a relative product)

Copies of the object layer inside the arrow layers are suffixed `@1`, `@2`, `@3`.
"""

from dataclasses import dataclass
from typing import Iterable, Tuple

from presentations import PresentationOrientation
from presentations.constructions import COPY_PLACEHOLDER
from theory_dsl import Orientation


@dataclass(frozen=True)
class ParameterSet:
    """
    A finite, ordered stand-in for the parameter locale: a truncation of ℕ
    when the orientation is LH, of Cantor space when it is PS.
    """

    tokens: Tuple[str, ...]
    orientation: Orientation = Orientation.LH

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(str(t) for t in self.tokens))
        object.__setattr__(self, "orientation", Orientation(self.orientation))
        if len(set(self.tokens)) != len(self.tokens):
            raise ValueError(f"duplicate parameter tokens: {self.tokens}")
        for token in self.tokens:
            if any(ch in token for ch in ":,@{}") or not token:
                raise ValueError(f"parameter token {token!r} clashes with the generator naming scheme")

    @classmethod
    def of_size(cls, n: int, orientation: Orientation = Orientation.LH) -> "ParameterSet":
        if n < 0:
            raise ValueError("parameter count must be non-negative")
        return cls(tuple(str(k) for k in range(n)), orientation)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    @property
    def role(self) -> str:
        return "standsFor_N" if self.orientation == Orientation.LH else "standsFor_Cantor"

    @property
    def presentation_orientation(self) -> PresentationOrientation:
        if self.orientation == Orientation.PS:
            return PresentationOrientation.CLOSED
        return PresentationOrientation.OPEN


def sim_id(sort: str, p: str, q: str) -> str:
    return f"sim:{sort}:{p}:{q}"


def rel_id(relation: str, args: Iterable[str]) -> str:
    return f"rel:{relation}:{','.join(args)}"


def map_id(name: str, sort: str, p: str, q: str) -> str:
    return f"{name}:{sort}:{p}:{q}"


def alpha_id(sort: str, p: str, q: str) -> str:
    return map_id("alpha", sort, p, q)


def equiv_template(sort: str, p: str) -> str:
    return f"equiv:{sort}:{COPY_PLACEHOLDER}:{p}"


def equiv_id(sort: str, k: int, p: str) -> str:
    return f"equiv:{sort}:{k}:{p}"


def at(generator_id: str, copy: int) -> str:
    """The id of a generator in the given copy of the object layer."""
    return f"{generator_id}@{copy}"


def strip_copy(generator_id: str) -> Tuple[str, int]:
    base, _, copy = generator_id.rpartition("@")
    return base, int(copy)
