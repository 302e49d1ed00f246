"""Hypothesis strategies producing random rule-language programs.

Each generated program comes with the number of decision points the
generator emitted, which serves as an oracle independent of the analyzer.
"""

from hypothesis import strategies as st

VARIABLES = ("A", "B", "C", "X", "Y", "MOTOR", "LEVEL")
CONSTANTS = ("K1", "K2", "K37", "T")
PARAM = "P"  # formal parameter name; never used as a variable


def atoms():
    return st.one_of(
        st.sampled_from(VARIABLES + CONSTANTS),
        st.integers(0, 99).map(str),
        st.sampled_from(("TRUE", "FALSE")),
    )


def expressions(max_leaves=4):
    return st.recursive(
        atoms(),
        lambda inner: st.one_of(
            st.tuples(inner, st.sampled_from(["+", "-", "*", "/"]), inner).map(lambda t: f"({t[0]} {t[1]} {t[2]})"),
            st.tuples(inner, st.sampled_from(["<", "<=", ">", ">=", "=", "<>"]), inner).map(lambda t: f"({t[0]} {t[1]} {t[2]})"),
            inner.map(lambda e: f"-{e}"),
            inner.map(lambda e: f"SIN({e})"),
            inner.map(lambda e: f"F({e})"),
        ),
        max_leaves=max_leaves,
    )


EXPR = {n: expressions(n) for n in (2, 3, 4)}
SYMBOLS = st.sampled_from(("OFF", "LOW", "HI"))


@st.composite
def conditions(draw):
    """Return (text, number of AND/OR operators)."""
    parts = draw(st.lists(EXPR[3], min_size=1, max_size=3))
    ops = draw(st.lists(st.sampled_from(["AND", "OR"]), min_size=len(parts) - 1, max_size=len(parts) - 1))
    text = parts[0]
    for op, part in zip(ops, parts[1:]):
        text = f"{text} {op} {part}"
    if draw(st.booleans()):
        text = f"NOT ({text})"
    return text, len(ops)


@st.composite
def actions(draw, first_set=False, max_size=2):
    items = []
    for i in range(draw(st.integers(1, max_size))):
        prefix = "SET " if first_set and i == 0 else draw(st.sampled_from(["SET ", ""]))
        target = draw(st.sampled_from(VARIABLES))
        value = draw(st.one_of(EXPR[3], SYMBOLS))
        items.append(f"{prefix}{target}={value}")
    return ", ".join(items)


@st.composite
def statements(draw, depth=0):
    """Return (text, decisions, boolean operators in conditions)."""
    kinds = ["if", "switch", "equation", "function", "action"]
    if depth < 2:
        kinds += ["while", "for"]
    kind = draw(st.sampled_from(kinds))
    if kind == "if":
        cond, ops = draw(conditions())
        text = f"IF {cond} THEN {draw(actions())}"
        if draw(st.booleans()):
            text += f" ELSE {draw(actions())}"
        return text + draw(st.sampled_from([";", ""])), 1, ops
    if kind == "switch":
        n = draw(st.integers(1, 4))
        cases, ops = [], 0
        for _ in range(n):
            cond, k = draw(conditions())
            ops += k
            cases.append(f"CASE {cond}: {draw(actions())};")
        if draw(st.booleans()):
            cases.append(f"DEFAULT: {draw(actions())};")
        scrutinee = draw(st.sampled_from(VARIABLES))
        return f"SWITCH ({scrutinee}) {{\n" + "\n".join(cases) + "\n}", n, ops
    if kind == "equation":
        return f"{draw(st.sampled_from(VARIABLES))} = {draw(EXPR[4])}" + draw(st.sampled_from([";", ""])), 0, 0
    if kind == "function":
        return f"F({PARAM}) = {PARAM} * {draw(EXPR[2])}", 0, 0
    if kind == "action":
        return f"{draw(actions(first_set=True, max_size=1))};", 0, 0
    body, decisions, ops = draw(_BODIES[depth + 1])
    if kind == "while":
        cond, k = draw(conditions())
        return f"WHILE {cond} DO\n{body}\nEND", decisions + 1, ops + k
    var = draw(st.sampled_from(("I", "J")))
    return f"FOR {var} = 1 TO {draw(EXPR[2])} DO\n{body}\nEND", decisions + 1, ops


@st.composite
def blocks(draw, depth=0, max_size=10):
    items = draw(st.lists(statements(depth), min_size=0, max_size=max_size))
    return "\n".join(t for t, _, _ in items), sum(d for _, d, _ in items), sum(o for _, _, o in items)


_BODIES = {1: blocks(1, max_size=3), 2: blocks(2, max_size=3)}
_PROGRAMS = blocks(0, 10)


def programs():
    """Programs of at most 10 top-level statements: (source, decisions, boolean ops)."""
    return _PROGRAMS
