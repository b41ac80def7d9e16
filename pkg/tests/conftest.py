"""Shared fixtures: golden-table loading and cached (6,3) systems."""

from __future__ import annotations

from pathlib import Path
from typing import NamedTuple

import pytest

from pluckereqs import (
    GrassmannParams,
    Label,
    QuadTerm,
    gen_plucker,
    gen_plucker_like,
    make_term,
)

DATA_DIR = Path(__file__).parent / "data"


class GoldenRow(NamedTuple):
    ordinal: int
    label: Label | None
    terms: tuple[QuadTerm, ...]


def _parse_index(token: str):
    return tuple(int(ch) for ch in token)


def _parse_term(token: str) -> QuadTerm:
    sign = {"+": 1, "-": -1}[token[0]]
    left, right = token[1:].split(".")
    return make_term(sign, _parse_index(left), _parse_index(right))


def load_golden(name: str) -> list[GoldenRow]:
    rows = []
    for line in (DATA_DIR / name).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        ordinal = int(tokens[0])
        label = None
        body = tokens[1:]
        if body and "," in body[0]:
            j, k = body[0].split(",")
            label = (_parse_index(j), _parse_index(k))
            body = body[1:]
        if body == ["0"]:
            terms: tuple[QuadTerm, ...] = ()
        else:
            terms = tuple(_parse_term(tok) for tok in body)
        rows.append(GoldenRow(ordinal, label, terms))
    return rows


@pytest.fixture(scope="session")
def params63() -> GrassmannParams:
    return GrassmannParams(6, 3)


@pytest.fixture(scope="session")
def plucker63(params63):
    return gen_plucker(params63)


@pytest.fixture(scope="session")
def pluckerlike63(params63):
    return gen_plucker_like(params63)


@pytest.fixture(scope="session")
def golden_two_index():
    return load_golden("pluckerlike_6_3.txt")


@pytest.fixture(scope="session")
def golden_reduced():
    return load_golden("plucker_reduced_6_3.txt")


@pytest.fixture(scope="session")
def golden_selected():
    return load_golden("plucker_6_3_selected.txt")
