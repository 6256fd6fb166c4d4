from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from golodkit.core import (
    F2,
    QQ,
    Field,
    GolodkitError,
    IdealParseError,
    Monomial,
    MonomialIdeal,
    ResourceCapError,
    RingMismatchError,
    cell_key,
    cl,
    cl_classes,
    iter_subsets,
    mask_of,
    minimalize,
    parse_cell,
    parse_ideal,
    render_cell,
)

exps = st.lists(st.integers(0, 4), min_size=3, max_size=3).map(Monomial)


def test_field_parse_and_arithmetic():
    assert Field.parse("q") == QQ
    assert Field.parse("f2") == F2
    assert Field.parse("fp:7").characteristic == 7
    with pytest.raises(ValueError):
        Field.parse("fp:6")
    with pytest.raises(ValueError):
        Field.parse("reals")
    assert F2(3) == 1
    assert Field(7).inv(3) == 5
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(0)


@given(exps, exps, exps)
def test_monomial_lattice_laws(a, b, c):
    assert a.lcm(b) == b.lcm(a)
    assert a.gcd(b).divides(a) and a.divides(a.lcm(b))
    assert a.lcm(b.lcm(c)) == a.lcm(b).lcm(c)
    assert (a * b) / b == a
    assert a.lcm(b) * a.gcd(b) == a * b
    assert a.is_coprime(b) == a.gcd(b).is_one()


def test_cells_render_and_parse():
    assert render_cell(mask_of([0, 1, 3])) == "u124"
    assert render_cell(0) == "u{}"
    assert render_cell(mask_of([0, 9]), 10) == "u{1,10}"
    for mask in range(64):
        assert parse_cell(render_cell(mask, 6)) == mask
    order = list(iter_subsets(3))
    assert order == sorted(order, key=cell_key) and order[0] == 0 and order[-1] == 7


def test_parse_text_and_json_agree():
    a = parse_ideal("ring x y z; ideal x^2*y, y*z, z^3;")
    b = parse_ideal('{"vars": ["x", "y", "z"], "generators": [[2,1,0],[0,1,1],[0,0,3]]}')
    assert a == b
    assert a.generators[0] == Monomial((2, 1, 0))
    assert a.render() == "ring x y z; ideal x^2*y, y*z, z^3;"


def test_parse_errors_carry_position():
    with pytest.raises(IdealParseError) as info:
        parse_ideal("ring x y;\nideal x*, y;")
    assert info.value.line == 2
    with pytest.raises(IdealParseError):
        parse_ideal("ring x; ideal w;")
    with pytest.raises(IdealParseError):
        parse_ideal("{not json")


def test_minimalize_drops_redundant_generators():
    ideal = minimalize([Monomial((2, 0)), Monomial((1, 0)), Monomial((0, 1)), Monomial((1, 0))])
    assert ideal.generators == (Monomial((1, 0)), Monomial((0, 1)))
    assert not ideal.was_minimal


def test_ideal_validation():
    with pytest.raises(RingMismatchError):
        MonomialIdeal(("x", "y"), (Monomial((1,)),))
    with pytest.raises(GolodkitError):
        MonomialIdeal(("x",), (Monomial((1,)), Monomial((2,))))
    with pytest.raises(GolodkitError):
        minimalize([Monomial((0, 0))])


def test_generator_cap(monkeypatch):
    monkeypatch.setenv("GOLODKIT_MAX_GENERATORS", "3")
    with pytest.raises(ResourceCapError):
        parse_ideal("ring a b c d; ideal a, b, c, d;")
    monkeypatch.delenv("GOLODKIT_MAX_GENERATORS")
    assert parse_ideal("ring a b c d; ideal a, b, c, d;").r == 4


def test_sort_lex_reindexes():
    ideal = parse_ideal("ring x y; ideal y^2, x*y, x^3;", sort="lex")
    assert ideal.generators[0] == Monomial((3, 0))


def test_multidegree_and_cl(fourgen, avramov):
    assert fourgen.multidegree([0, 2]) == Monomial((1, 1, 0, 1))
    assert fourgen.multidegree(0) == Monomial.one(4)
    # x1^2 and x3*x4 share no variable; x1*x2 links x1^2 to x2*x3
    assert cl(avramov, [0, 3]) == 2
    assert cl(avramov, [0, 1, 2]) == 1
    assert cl_classes(avramov, [0, 2, 4]) == [[0], [2], [4]]
    with pytest.raises(ValueError):
        cl(avramov, 0)
