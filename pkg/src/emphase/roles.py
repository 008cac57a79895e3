"""Bottom-up derivation of the maximum case frame from a scheme.

Each variable starts with the initial role its basic predicate assigns
to that argument position.  Walking towards the root, every enclosing
propositional predicate then maps the role through the rule table,
under a polarity context that polarity-flip predicates (``not``) toggle
as they are crossed.  The result, one role per variable, is the
maximum case frame of the scheme.

Rules live in data files::

    (init have 1 (locat have))                 ; initial value
    (modify bec pos (locat have) (goal have))  ; role map under polarity
    (identity et)                              ; maps every role to itself
    (flip not)                                 ; toggles polarity, keeps role

A ``flip`` predicate keeps roles unchanged unless an explicit
``modify`` entry overrides it.  Missing rules are hard errors at
derivation time: adding a new field means deliberately extending the
table.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import sexpr
from .errors import MissingRuleError, ParseError
from .scheme import Proposition, Scheme
from .sexpr import QuotedString

POS = "pos"
NEG = "neg"


@dataclass(frozen=True)
class Role:
    """A deep case: a label anchored to a basic predicate."""

    label: str
    anchor: str

    def __str__(self):
        return f"<{self.label}, {self.anchor}>"


# variable name -> Role, in scheme order
CaseFrame = dict[str, Role]


@dataclass(frozen=True)
class RoleRuleTable:
    initial: dict[tuple[str, int], Role]
    modifiers: dict[tuple[str, str, Role], Role]
    flips: frozenset[str]
    identities: frozenset[str]


def flip_polarity(polarity: str) -> str:
    return NEG if polarity == POS else POS


def initial_role(table: RoleRuleTable, predicate: str, position: int) -> Role:
    """Initial role of a basic predicate's argument (1-based position)."""
    role = table.initial.get((predicate, position))
    if role is None:
        raise MissingRuleError(
            f"no initial role for argument {position} of basic predicate {predicate!r}"
        )
    return role


def apply_rule(table: RoleRuleTable, predicate: str, incoming: Role, polarity: str) -> Role:
    """Role produced when ``incoming`` crosses ``predicate`` under the
    given polarity context.  Pure table lookup."""
    out = table.modifiers.get((predicate, polarity, incoming))
    if out is not None:
        return out
    if predicate in table.identities or predicate in table.flips:
        return incoming
    raise MissingRuleError(
        f"no role rule for ({predicate} {polarity} {incoming})"
    )


def derive_case_frame(scheme: Scheme, table: RoleRuleTable) -> CaseFrame:
    """Maximum case frame of the scheme, one role per variable."""

    def walk(node: Proposition) -> list[tuple[str, Role, str]]:
        if node.is_basic:
            return [
                (v.name, initial_role(table, node.predicate, i), POS)
                for i, v in enumerate(node.args, start=1)
            ]
        entries: list[tuple[str, Role, str]] = []
        for child in node.args:
            for var, role, polarity in walk(child):
                role = apply_rule(table, node.predicate, role, polarity)
                if node.predicate in table.flips:
                    polarity = flip_polarity(polarity)
                entries.append((var, role, polarity))
        return entries

    return {var: role for var, role, _ in walk(scheme.root)}


def missing_rules(scheme: Scheme, table: RoleRuleTable) -> list[str]:
    """Every rule gap the scheme would hit, for load-time totality checks."""
    gaps: list[str] = []

    def walk(node: Proposition) -> list[tuple[str, Role | None, str]]:
        if node.is_basic:
            out = []
            for i, v in enumerate(node.args, start=1):
                try:
                    out.append((v.name, initial_role(table, node.predicate, i), POS))
                except MissingRuleError as err:
                    gaps.append(str(err))
                    out.append((v.name, None, POS))
            return out
        entries: list[tuple[str, Role | None, str]] = []
        for child in node.args:
            for var, role, polarity in walk(child):
                if role is not None:
                    try:
                        role = apply_rule(table, node.predicate, role, polarity)
                    except MissingRuleError as err:
                        gaps.append(str(err))
                        role = None
                if node.predicate in table.flips:
                    polarity = flip_polarity(polarity)
                entries.append((var, role, polarity))
        return entries

    walk(scheme.root)
    return gaps


# ---------------------------------------------------------------------------
# Rule-table file


def _role_from(term, what: str) -> Role:
    if (
        not isinstance(term, list)
        or len(term) != 2
        or not all(isinstance(x, str) and not isinstance(x, QuotedString) for x in term)
    ):
        raise ParseError(f"{what} must be a (label anchor) pair")
    return Role(term[0], term[1])


def parse_rule_table(text: str) -> RoleRuleTable:
    initial: dict[tuple[str, int], Role] = {}
    modifiers: dict[tuple[str, str, Role], Role] = {}
    flips: set[str] = set()
    identities: set[str] = set()

    for term in sexpr.read_all(text):
        if not isinstance(term, list) or not term or not isinstance(term[0], str):
            raise ParseError("rule entries are parenthesized terms")
        head = term[0]
        if head == "init":
            if len(term) != 4 or not isinstance(term[2], int):
                raise ParseError("(init <predicate> <position> (label anchor))")
            key = (term[1], term[2])
            if key in initial:
                raise ParseError(f"duplicate init rule for {key}")
            initial[key] = _role_from(term[3], "an initial role")
        elif head == "modify":
            if len(term) != 5 or term[2] not in (POS, NEG):
                raise ParseError(
                    "(modify <predicate> pos|neg (label anchor) (label anchor))"
                )
            key = (term[1], term[2], _role_from(term[3], "the incoming role"))
            if key in modifiers:
                raise ParseError(f"duplicate modify rule for {key}")
            modifiers[key] = _role_from(term[4], "the resulting role")
        elif head == "flip":
            if len(term) != 2:
                raise ParseError("(flip <predicate>)")
            flips.add(term[1])
        elif head == "identity":
            if len(term) != 2:
                raise ParseError("(identity <predicate>)")
            identities.add(term[1])
        else:
            raise ParseError(f"unknown rule entry {head!r}")

    return RoleRuleTable(initial, modifiers, frozenset(flips), frozenset(identities))
