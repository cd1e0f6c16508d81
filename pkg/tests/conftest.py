import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from gensolve.matrix import Matrix

FIXTURES = Path(__file__).parent / "fixtures"

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def random_entry(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 4))


def random_matrix(rng: random.Random, m: int, n: int) -> Matrix:
    """Entries p/q with |p| <= 9, q <= 4.

    About half the draws are made rank deficient by copying rows/columns or
    zeroing them, which keeps every entry inside the same value range.
    """
    data = [[random_entry(rng) if rng.random() < 0.8 else Fraction(0) for _ in range(n)] for _ in range(m)]
    if m and n and rng.random() < 0.5:
        for _ in range(rng.randint(1, max(m, n))):
            kind = rng.choice(("row", "col", "zero_row", "zero_col"))
            if kind == "row" and m > 1:
                i, j = rng.sample(range(m), 2)
                data[i] = list(data[j])
            elif kind == "col" and n > 1:
                i, j = rng.sample(range(n), 2)
                for row in data:
                    row[i] = row[j]
            elif kind == "zero_row":
                data[rng.randrange(m)] = [Fraction(0)] * n
            elif kind == "zero_col":
                c = rng.randrange(n)
                for row in data:
                    row[c] = Fraction(0)
    return Matrix(m, n, data)


def random_shape(rng: random.Random, lo: int = 1, hi: int = 6) -> tuple[int, int]:
    return rng.randint(lo, hi), rng.randint(lo, hi)


def random_consistent_rhs(rng: random.Random, a: Matrix, k: int = 1) -> tuple[Matrix, Matrix]:
    """``(C, X0)`` with ``C = A X0`` for a random ``X0``."""
    x0 = random_matrix(rng, a.cols, k)
    return a @ x0, x0


rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))


@st.composite
def matrices(draw, min_dim: int = 0, max_dim: int = 5, rows: int | None = None, cols: int | None = None):
    m = rows if rows is not None else draw(st.integers(min_dim, max_dim))
    n = cols if cols is not None else draw(st.integers(min_dim, max_dim))
    data = draw(st.lists(st.lists(rationals | st.just(Fraction(0)), min_size=n, max_size=n), min_size=m, max_size=m))
    # low-rank variant: every row a multiple of a few generator rows
    if m and n and draw(st.booleans()):
        gens = data[: draw(st.integers(1, m))]
        data = [[c * x for x in gens[i % len(gens)]] for i, c in enumerate(draw(st.lists(rationals, min_size=m, max_size=m)))]
    return Matrix(m, n, data)


def col(*xs) -> Matrix:
    return Matrix.column(list(xs))


def mat(rows) -> Matrix:
    return Matrix.from_rows(rows)


@pytest.fixture
def rng():
    return random.Random(20241016)


@pytest.fixture
def record_acceptance(request):
    """Store a pass/fail line for the terminal summary."""

    def record(label: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE_RESULTS[label] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[0])):
        passed, detail = ACCEPTANCE_RESULTS[label]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
