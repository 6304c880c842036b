import pytest

from ppcalc.algebra import (
    AlgebraError,
    QuiverSpec,
    algebra_from_quiver,
    validate_algebra,
)
from ppcalc.linalg import GF, QQ, Mat

F2 = GF(2)


def nilpotent_lambda(field):
    """k[x]/(x^2) by raw structure constants, basis {1, x}."""
    from ppcalc.algebra import Algebra

    mul = [
        [Mat.from_rows(field, [[1, 0]]), Mat.from_rows(field, [[0, 1]])],
        [Mat.from_rows(field, [[0, 1]]), Mat.from_rows(field, [[0, 0]])],
    ]
    return Algebra(field, ["1", "x"], Mat.from_rows(field, [[1, 0]]), mul)


def test_validate_nilpotent_extension():
    a = nilpotent_lambda(QQ)
    assert a.dim == 2
    assert validate_algebra(a).ok


def test_validate_x_squared_one():
    # k[x]/(x^2 - 1): x*x = 1; associativity is forced in dim 2
    from ppcalc.algebra import Algebra

    field = GF(3)
    mul = [
        [Mat.from_rows(field, [[1, 0]]), Mat.from_rows(field, [[0, 1]])],
        [Mat.from_rows(field, [[0, 1]]), Mat.from_rows(field, [[1, 0]])],
    ]
    a = Algebra(field, ["1", "x"], Mat.from_rows(field, [[1, 0]]), mul)
    assert validate_algebra(a).ok


def test_validate_reports_failing_triple():
    # mangled table: x*x = y, x*y = 1, y*x = 0 gives (x*x)*x = 0 != 1 = x*(x*x)
    from ppcalc.algebra import Algebra

    field = QQ

    def rows(*vals):
        return [Mat.from_rows(field, [list(v)]) for v in vals]

    mul = [
        rows([1, 0, 0], [0, 1, 0], [0, 0, 1]),
        rows([0, 1, 0], [0, 0, 1], [1, 0, 0]),
        rows([0, 0, 1], [0, 0, 0], [0, 0, 0]),
    ]
    a = Algebra(field, ["1", "x", "y"], Mat.from_rows(field, [[1, 0, 0]]), mul)
    report = validate_algebra(a)
    assert not report.ok
    assert "('x', 'x', 'x')" in report.problems[0]


def test_element_arithmetic():
    a = nilpotent_lambda(QQ)
    x = a.basis_element("x")
    one = a.one_element()
    assert (x * x).is_zero()
    assert (one + x) * (one - x) == one
    assert repr(x) == "x"


def test_kronecker_quiver():
    q = QuiverSpec(2, [(1, 2, "a"), (1, 2, "b")])
    k = algebra_from_quiver(q, F2)
    assert k.dim == 4
    assert k.labels == ["e1", "e2", "a", "b"]
    assert validate_algebra(k).ok
    e1, e2 = k.basis_element("e1"), k.basis_element("e2")
    assert e1 * e1 == e1 and e2 * e2 == e2
    assert (e1 * e2).is_zero()
    assert e1 + e2 == k.one_element()
    a_, b_ = k.basis_element("a"), k.basis_element("b")
    assert e1 * a_ == a_ and a_ * e2 == a_ and (a_ * e1).is_zero()
    assert (a_ * b_).is_zero()


def test_three_kronecker_dim_5():
    q = QuiverSpec(2, [(1, 2, "a"), (1, 2, "b"), (1, 2, "c")])
    k = algebra_from_quiver(q, QQ)
    assert k.dim == 5


def test_loop_with_square_zero_is_lambda():
    q = QuiverSpec(1, [(1, 1, "x")], relations=[[(1, ["x", "x"])]], cap=2)
    lam = algebra_from_quiver(q, F2)
    assert lam.dim == 2
    assert lam.labels == ["e1", "x"]
    x = lam.basis_element("x")
    assert (x * x).is_zero()
    assert validate_algebra(lam).ok


def test_truncated_free_algebra():
    # k<X,Y>/(X,Y)^2: one vertex, two loops, all length-2 paths zero
    rels = [
        [(1, [u, v])] for u in ("X", "Y") for v in ("X", "Y")
    ]
    q = QuiverSpec(1, [(1, 1, "X"), (1, 1, "Y")], relations=rels, cap=2)
    a = algebra_from_quiver(q, GF(3))
    assert a.dim == 3
    assert validate_algebra(a).ok


def test_non_admissible_cap_errors():
    q = QuiverSpec(1, [(1, 1, "x")], relations=[[(1, ["x", "x", "x"])]], cap=2)
    with pytest.raises(AlgebraError, match="raise the cap"):
        algebra_from_quiver(q, F2)


def test_bad_relations_rejected():
    with pytest.raises(AlgebraError, match="length >= 2"):
        QuiverSpec(1, [(1, 1, "x")], relations=[[(1, ["x"])]])
    with pytest.raises(AlgebraError, match="not composable"):
        QuiverSpec(2, [(1, 2, "a"), (1, 2, "b")], relations=[[(1, ["a", "b"])]])
    with pytest.raises(AlgebraError, match="non-parallel"):
        QuiverSpec(
            2,
            [(1, 2, "a"), (1, 1, "c")],
            relations=[[(1, ["c", "c"]), (1, ["c", "a"])]],
        )
