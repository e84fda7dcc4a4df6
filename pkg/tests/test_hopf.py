from fractions import Fraction

import numpy as np
import pytest

from trisparse.errors import EvaluationError, HopfAlgebraError, ParseError
from trisparse.hopf import (BUILTIN_GROUPS, GroupTable, ScalarField, builtin_group, group_algebra,
                            parse_group_table, parse_hopf_algebra)


def test_fields():
    assert ScalarField('Q').characteristic == 0
    assert ScalarField('F7').characteristic == 7
    for bad in ('F6', 'F1', 'R', 'F'):
        with pytest.raises(ValueError):
            ScalarField(bad)


def test_field_arithmetic():
    q, f5 = ScalarField('Q'), ScalarField('F5')
    assert q.power(2, -2) == Fraction(1, 4)
    assert f5.power(2, -1) == 3
    assert f5.coerce(Fraction(1, 2)) == 3
    assert q.normalize(Fraction(6, 3)) == 2
    with pytest.raises(EvaluationError):
        f5.power(10, -1)
    with pytest.raises(ValueError):
        f5.coerce(Fraction(1, 5))


@pytest.mark.parametrize('name,order,abelian', [
    ('Z2', 2, True), ('Z3', 3, True), ('Z4', 4, True),
    ('Z2xZ2', 4, True), ('S3', 6, False), ('Q8', 8, False),
])
def test_builtin_groups(name, order, abelian):
    group = builtin_group(name)
    assert name in BUILTIN_GROUPS
    assert group.order == order
    assert group.is_abelian() == abelian
    assert group.validate() == []
    for g in range(order):
        assert group.multiply(g, group.inverse(g)) == 0


def test_quaternion_squares():
    q8 = builtin_group('Q8')
    squares = {q8.multiply(g, g) for g in range(8)}
    assert squares == {0, 1}
    assert sum(1 for g in range(8) if q8.multiply(g, g) == 0) == 2


def test_unknown_group():
    with pytest.raises(ValueError):
        builtin_group('A5')


def test_group_table_rejects_non_groups():
    with pytest.raises(HopfAlgebraError):
        GroupTable([[0, 1], [1, 1]])
    with pytest.raises(HopfAlgebraError):
        GroupTable([[0, 1, 2], [1, 0, 2], [2, 2, 0]])


def test_parse_group_table(data_dir):
    klein = parse_group_table((data_dir / 'groups' / 'klein.grp').read_text(), 'klein')
    assert klein.table == builtin_group('Z2xZ2').table
    with pytest.raises(ParseError):
        parse_group_table("group 2\n0 1\n")
    with pytest.raises(ParseError):
        parse_group_table("grp 2\n0 1\n1 0\n")


def test_group_algebra_structure():
    algebra = group_algebra(builtin_group('S3'))
    assert algebra.dim == 6
    assert algebra.name == 'Q[S3]'
    assert list(algebra.trace) == [6, 0, 0, 0, 0, 0]
    assert list(algebra.cotrace) == [1] * 6
    assert all(algebra.M[:, b, c].sum() == 1 for b in range(6) for c in range(6))


def test_hopf_file_matches_group_algebra(data_dir):
    loaded = parse_hopf_algebra((data_dir / 'algebras' / 'z2.hopf').read_text(), 'z2')
    built = group_algebra(builtin_group('Z2'))
    assert loaded.dim == built.dim
    assert loaded.field == built.field
    for key in ('M', 'Delta', 'S', 'trace', 'cotrace'):
        assert np.array_equal(getattr(loaded, key), getattr(built, key)), key


def test_hopf_axioms_are_checked():
    text = "hopf 2 Q\nM:\n0 0 1 0\n1 0 0 0\nDelta:\n1 0 0 0\n0 0 0 1\nS:\n1 0\n0 1\ntrace:\n2 0\ncotrace:\n1 1\n"
    with pytest.raises(HopfAlgebraError, match='associative'):
        parse_hopf_algebra(text)


@pytest.mark.parametrize('text', [
    "",
    "hopf 2 F4\n",
    "hopf 1 Q\nM:\n1\nDelta:\n1\nS:\n1\ntrace:\n1\n",
    "hopf 1 Q\nM:\n1\nDelta:\n1 2\nS:\n1\ntrace:\n1\ncotrace:\n1\n",
    "hopf 1 Q\nM:\n1\nM:\n1\n",
    "hopf 1 Q\nM:\nx\n",
])
def test_hopf_parse_errors(text):
    with pytest.raises(ParseError):
        parse_hopf_algebra(text)
