import json

import pytest

from polynerve.errors import ArityError, ExprSyntaxError, SizeOutOfRange, UnknownConstructor
from polynerve.expr import evaluate, parse_expression
from polynerve.polytope import is_isomorphic, make_standard, product, pyramid


def test_parse_pyramid():
    E = parse_expression("pyr(polygon(4))")
    assert E.name == "pyr" and E.args[0].name == "polygon" and E.args[0].args == (4,)
    assert str(E) == "pyr(polygon(4))"
    assert is_isomorphic(evaluate(E), pyramid(make_standard("polygon", 4)))


def test_prism():
    P = evaluate(" prod( simplex(2) ,\n simplex(1) ) ")
    assert (P.n, P.m, P.v) == (3, 5, 6)
    assert is_isomorphic(P, product(make_standard("simplex", 2), make_standard("simplex", 1)))


def test_arity_errors():
    with pytest.raises(ArityError):
        parse_expression("pyr()")
    with pytest.raises(ArityError):
        parse_expression("prod(cube(2))")
    with pytest.raises(ArityError):
        parse_expression("cube(cube(2))")
    with pytest.raises(ArityError):
        parse_expression('pyr("x")')


def test_unknown_constructor():
    with pytest.raises(UnknownConstructor):
        parse_expression("prism(3)")


def test_syntax_error_position():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expression("pyr(\n  cube(2)")
    assert (info.value.line, info.value.col) == (2, 10)
    with pytest.raises(ExprSyntaxError) as info:
        parse_expression("cube(2) x")
    assert info.value.col == 9
    assert isinstance(info.value, SyntaxError)


def test_depth_limit():
    ok = "pyr(" * 15 + "simplex(1)" + ")" * 15
    assert parse_expression(ok).depth == 16
    with pytest.raises(ExprSyntaxError):
        parse_expression("pyr(" * 16 + "simplex(1)" + ")" * 16)


def test_size_guards():
    with pytest.raises(SizeOutOfRange):
        evaluate("cross(6)")  # 64 facets
    with pytest.raises(SizeOutOfRange):
        evaluate("cube(21)")  # 2**21 vertices
    with pytest.raises(SizeOutOfRange):
        evaluate("polygon(2)")
    with pytest.raises(SizeOutOfRange):
        evaluate("dual(cube(6))")


def test_file_constructor(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(make_standard("cube", 3).dumps())
    P = evaluate(f'dual(file({json.dumps(str(path))}))')
    assert is_isomorphic(P, make_standard("cross", 3))
