import pytest

from sqchoose.errors import ContractViolation, DomainError
from sqchoose.latin import (LatinSquare, are_orthogonal, cyclic_square, is_latin, is_prime,
                            mols_family)

FIGURE_L1 = [[1, 2, 3], [2, 3, 1], [3, 1, 2]]
FIGURE_L2 = [[1, 3, 2], [2, 1, 3], [3, 2, 1]]


def test_order_three_matches_published_squares():
    l1, l2 = mols_family(3)
    assert l1.rows() == FIGURE_L1
    assert l2.rows() == FIGURE_L2
    assert l1(2, 3) == 1


def test_non_prime_rejected():
    with pytest.raises(DomainError, match="prime"):
        mols_family(4)
    with pytest.raises(DomainError, match="at least 3"):
        mols_family(2)


def test_order_four_formula_is_not_latin():
    # The cyclic rule with i=2 repeats entries when 4 is not prime.
    sq = cyclic_square(4, 2)
    raw = [[1 + ((j - 1) + 2 * (k - 1)) % 4 for k in range(1, 5)] for j in range(1, 5)]
    assert sq.rows() == raw
    assert not is_latin(raw)


def test_is_latin_examples():
    assert is_latin(FIGURE_L1)
    assert not is_latin([[1, 2], [1, 2]])
    assert is_latin([[1, 2], [2, 1]])


@pytest.mark.parametrize("bad", [[[1, 2], [2]], [[1, 3], [3, 1]], []])
def test_is_latin_contract(bad):
    with pytest.raises(ContractViolation):
        is_latin(bad)


def test_orthogonality_examples():
    l1, l2 = mols_family(3)
    assert are_orthogonal(l1, l2)
    assert not are_orthogonal(l1, l1)
    with pytest.raises(ContractViolation):
        are_orthogonal(l1, mols_family(5)[0])


@pytest.mark.parametrize("n", [3, 5, 7, 11, 13])
def test_family_properties(n):
    fam = mols_family(n)
    assert len(fam) == n - 1
    for i, sq in enumerate(fam, start=1):
        assert is_latin(sq)
        assert sq.rows()[0] == [1 + (i * (k - 1)) % n for k in range(1, n + 1)]
        assert [row[0] for row in sq.rows()] == list(range(1, n + 1))
    for a in range(len(fam)):
        for b in range(a + 1, len(fam)):
            assert are_orthogonal(fam[a], fam[b])


def test_is_prime():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_json_and_grid():
    sq = mols_family(3)[0]
    assert LatinSquare.from_json(sq.to_json()) == sq
    assert sq.grid().splitlines()[1] == "| 1 | 2 | 3 |"
