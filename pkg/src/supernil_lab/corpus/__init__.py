"""Bundled example algebras (JSON files in this directory)."""

from importlib import resources

from ..algebra import FiniteAlgebra, parse_algebra

GROUPS = ("Z2", "Z3", "Z4", "Z2xZ2", "S3", "Z6", "D4", "Q8", "Z8")


def names() -> list[str]:
    files = resources.files(__name__).iterdir()
    return sorted(f.name[:-5] for f in files if f.name.endswith(".json"))


def load(name: str) -> FiniteAlgebra:
    text = resources.files(__name__).joinpath(f"{name}.json").read_text("utf-8")
    return parse_algebra(text)


def load_all() -> list[FiniteAlgebra]:
    return [load(n) for n in names()]
