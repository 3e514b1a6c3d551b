"""Shared helpers: sympy is used as an independent oracle."""

import sympy

from macbranch.ring import RatFunc, as_ratfunc

SYMS = {name: sympy.Symbol(name) for name in
        ["q", "t", "a", "b", "c", "d", "e", "f", "z", "u"]
        + [f"x{i}" for i in range(1, 7)] + [f"y{i}" for i in range(1, 7)]}


def to_sympy(value):
    """Convert a RatFunc (via its text form) into a sympy expression."""
    text = as_ratfunc(value).to_text().replace("^", "**")
    return sympy.sympify(text, locals=SYMS)


def sympy_equal(value, expr) -> bool:
    return sympy.simplify(to_sympy(value) - expr) == 0


def from_sympy(expr) -> RatFunc:
    num, den = sympy.fraction(sympy.together(expr))
    return as_ratfunc(str(sympy.expand(num)).replace("**", "^")) / as_ratfunc(
        str(sympy.expand(den)).replace("**", "^")
    )


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
