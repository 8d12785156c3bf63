"""Singularity presentations: ambient ring, homogeneous ideal, named matrices.

Text format::

    # comment
    name twisted-cubic-cone
    variables x y z w
    weights 1 1 1 1
    generators
    x*w - y*z
    y^2 - x*z
    matrix psi_S
    z, y
    w, z
    syzygy psi_S

``syzygy NAME`` marks the matrix whose columns are relations among the
generators; ``second-syzygy NAME`` the map feeding into it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Sequence

from ..algebra import GroebnerBasis, Polynomial, Ring, buchberger, format_polynomial
from .graded import GradedMatrix, graded_matrix, jacobian

PRESETS = ("a1", "a2-like", "twisted-cubic-cone", "sym3-cone")


@dataclass(frozen=True)
class SingularityPresentation:
    ring: Ring
    generators: tuple
    weights: tuple
    matrices: dict = field(default_factory=dict)
    label: str = ""
    syzygy_name: str | None = None
    second_syzygy_name: str | None = None

    def __post_init__(self):
        for f in self.generators:
            if not f.is_homogeneous(self.weights):
                raise ValueError(f"generator {f} is not homogeneous for weights {self.weights}")
        for role in (self.syzygy_name, self.second_syzygy_name):
            if role is not None and role not in self.matrices:
                raise ValueError(f"no matrix named {role!r}")
        if self.syzygy is not None:
            relation = graded_matrix(self.ring, [list(self.generators)], self.weights) @ self.syzygy
            if any(p for p in relation.entries[0]):
                raise ValueError(f"matrix {self.syzygy_name} is not a syzygy of the generators")

    def __hash__(self):
        return hash((self.label, self.generators))

    @property
    def syzygy(self) -> GradedMatrix | None:
        return self.matrices.get(self.syzygy_name) if self.syzygy_name else None

    @property
    def second_syzygy(self) -> GradedMatrix | None:
        return self.matrices.get(self.second_syzygy_name) if self.second_syzygy_name else None

    @cached_property
    def basis(self) -> GroebnerBasis:
        return buchberger(list(self.generators), ring=self.ring)

    def jacobian(self) -> GradedMatrix:
        return jacobian(list(self.generators), self.weights)

    def with_matrix(self, name: str, entries) -> "SingularityPresentation":
        """Copy with one matrix replaced (used for perturbation checks)."""
        mats = dict(self.matrices)
        mats[name] = graded_matrix(self.ring, entries, self.weights)
        return SingularityPresentation(
            self.ring, self.generators, self.weights, mats, self.label,
            self.syzygy_name, self.second_syzygy_name,
        )


def parse_presentation(text: str) -> SingularityPresentation:
    name = ""
    names: list = []
    weights = None
    gens_text: list = []
    mats_text: dict = {}
    roles: dict = {}
    section = None
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "name":
            name = rest
        elif head == "variables":
            names = rest.replace(",", " ").split()
        elif head == "weights":
            weights = tuple(int(t) for t in rest.replace(",", " ").split())
        elif head == "generators":
            section = "generators"
        elif head == "matrix":
            if not rest or rest in mats_text:
                raise ValueError(f"line {lineno}: matrix needs a new name")
            section, current = "matrix", rest
            mats_text[current] = []
        elif head in ("syzygy", "second-syzygy"):
            roles[head] = rest
        elif section == "generators":
            gens_text.append(line)
        elif section == "matrix":
            mats_text[current].append([e.strip() for e in line.split(",")])
        else:
            raise ValueError(f"line {lineno}: unexpected {line!r}")
    if not names:
        raise ValueError("presentation declares no variables")
    if not gens_text:
        raise ValueError("presentation declares no generators")
    ring = Ring(tuple(names))
    weights = weights or (1,) * len(names)
    if len(weights) != len(names):
        raise ValueError("one weight per variable is required")
    if any(w <= 0 for w in weights):
        raise ValueError("weights must be positive")
    gens = tuple(ring.parse(g) for g in gens_text)
    mats = {k: graded_matrix(ring, rows, weights) for k, rows in mats_text.items()}
    return SingularityPresentation(
        ring, gens, weights, mats, name, roles.get("syzygy"), roles.get("second-syzygy")
    )


def format_presentation(p: SingularityPresentation) -> str:
    lines = []
    if p.label:
        lines.append(f"name {p.label}")
    lines.append("variables " + " ".join(p.ring.names))
    lines.append("weights " + " ".join(map(str, p.weights)))
    lines.append("generators")
    lines += [format_polynomial(f) for f in p.generators]
    for k, m in p.matrices.items():
        lines.append(f"matrix {k}")
        lines += [", ".join(r) for r in m.rows_text()]
    if p.syzygy_name:
        lines.append(f"syzygy {p.syzygy_name}")
    if p.second_syzygy_name:
        lines.append(f"second-syzygy {p.second_syzygy_name}")
    return "\n".join(lines) + "\n"


def load_presentation(path) -> SingularityPresentation:
    return parse_presentation(Path(path).read_text())


def preset(name: str) -> SingularityPresentation:
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    text = resources.files("rigidkit.data").joinpath("presentations", f"{name}.pres").read_text()
    return parse_presentation(text)


def hypersurface(text: str, names: Sequence[str], weights: Sequence[int] | None = None) -> SingularityPresentation:
    ring = Ring(tuple(names))
    f: Polynomial = ring.parse(text)
    return SingularityPresentation(ring, (f,), tuple(weights or (1,) * len(names)), {}, text)
