"""Shipped fixtures: plat fronts and Cthulhu block data."""
from __future__ import annotations

from importlib import resources
from typing import List

FRONTS = ("unknot", "trefoil", "chekanov_1", "chekanov_2", "m946")


def fixture_text(name: str) -> str:
    return (resources.files("lchkit") / "fixtures" / name).read_text()


def fixture_names() -> List[str]:
    return sorted(p.name for p in (resources.files("lchkit") / "fixtures").iterdir() if p.name.endswith((".front", ".json")))


def load_front(name: str):
    from .diagram import parse_front

    return parse_front(fixture_text(f"{name}.front"))


def load_dga(name: str):
    from .discs import differential

    return differential(load_front(name))
