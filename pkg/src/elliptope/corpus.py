"""Access to the checked-in graph files under ``elliptope/corpus``."""

from __future__ import annotations

from importlib import resources

from .graph import Graph, parse_graph
from .recognizer import SplitDecompWitness


def _dir():
    return resources.files("elliptope") / "corpus"


def names() -> list[str]:
    return sorted(p.name[:-2] for p in _dir().iterdir() if p.name.endswith(".g"))


def load(name: str) -> Graph:
    """Graph ``name`` (without the ``.g`` suffix)."""
    return parse_graph((_dir() / f"{name}.g").read_text())


def path(name: str):
    return _dir() / name


def witness(name: str = "example1_witness") -> SplitDecompWitness:
    return SplitDecompWitness.from_json((_dir() / f"{name}.json").read_text())


def cones() -> list[str]:
    return [n for n in names() if n.startswith("cone_")]


def fans() -> list[str]:
    return [n for n in names() if n.startswith("fan_")]
