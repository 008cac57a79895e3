"""Independent brute-force oracles and random generators.

The oracles here re-implement the engine's enumeration and assignment
decisions by literal filtering, without calling the engine's own
enumeration code, so the two routes can disagree when one is wrong:

* ``emphasis_oracle``: powerset of all proposition nodes, filtered
  by the distribution invariants;
* ``case_frame_oracle``: per-variable fold of ``apply_rule`` along the
  root-to-leaf path (vs. the engine's single tree pass);
* ``assign_oracle`` / ``forms_oracle``: direct filtering of all
  (emphasis x blocking) candidate pairs.
"""

from __future__ import annotations

import itertools
import random

from emphase.emphasis import (
    BlockingSet,
    Case,
    CasePriority,
    DirectCase,
    EmphasisAssignment,
    Oblique,
    ObliqueTable,
    Realization,
)
from emphase.roles import NEG, POS, Role, RoleRuleTable, apply_rule, initial_role
from emphase.scheme import FieldDefinition, Proposition, Scheme, Variable
from emphase.sexpr import QuotedString
from emphase.spl import SplTerm

# ---------------------------------------------------------------------------
# Oracles


def _powerset(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def emphasis_oracle(field: FieldDefinition) -> set[frozenset]:
    """All node subsets satisfying the distribution invariants."""
    scheme = field.scheme
    start = field.emphasis_start
    exempt = {start, *field.optional_branches}
    valid: set[frozenset] = set()
    for subset in _powerset(scheme.paths):
        chosen = frozenset(subset)
        if start not in chosen:
            continue
        ok = True
        for path in chosen:
            if path not in exempt:
                if not path or path[:-1] not in chosen:
                    ok = False
                    break
            node = scheme.node_at(path)
            children = node.child_indices()
            if children:
                inside = sum(1 for i in children if path + (i,) in chosen)
                if inside != 1:
                    ok = False
                    break
        if ok:
            valid.add(chosen)
    return valid


def case_frame_oracle(scheme: Scheme, table: RoleRuleTable) -> dict[str, Role]:
    """Fold apply_rule along each variable's root-to-leaf path."""
    frame: dict[str, Role] = {}
    for variable in scheme.variables:
        path, position = scheme.variable_site(variable)
        role = initial_role(table, scheme.node_at(path).predicate, position)
        polarity = POS
        for depth in range(len(path) - 1, -1, -1):
            predicate = scheme.node_at(path[:depth]).predicate
            role = apply_rule(table, predicate, role, polarity)
            if predicate in table.flips:
                polarity = NEG if polarity == POS else POS
        frame[variable] = role
    return frame


def assign_oracle(case_frame, emphatic, blocked, oblique_table, priority):
    """Realize one candidate pair, or None when no realization exists.

    Literal restatement of the assignment rules: one direct case per
    priority order, all emphatic unblocked roles must be consumed,
    verbalized non-emphatic roles need an oblique entry.
    """
    realization: dict[str, object] = {}
    remaining = {v for v in case_frame if v in emphatic and v not in blocked}
    for case_name, labels in (
        ("nominative", priority.nominative),
        ("dative", priority.dative),
        ("accusative", priority.accusative),
    ):
        chosen = None
        for label in labels:
            for v in case_frame:
                if v in remaining and case_frame[v].label == label:
                    chosen = v
                    break
            if chosen is not None:
                break
        if chosen is not None:
            realization[chosen] = case_name
            remaining.discard(chosen)
        elif case_name == "nominative":
            return None
    if remaining:
        return None
    for v in case_frame:
        if v in blocked:
            realization[v] = "blocked"
        elif v not in realization:
            entry = oblique_table.entries.get(case_frame[v])
            if entry is None:
                return None
            realization[v] = ("oblique", entry[0], entry[1].value)
    return realization


def realization_key(realization: Realization):
    """Normal form shared by engine output and oracle output."""
    out = []
    for v, r in realization.entries:
        if isinstance(r, DirectCase):
            out.append((v, r.case.value))
        elif isinstance(r, Oblique):
            out.append((v, ("oblique", r.preposition, r.governed.value)))
        else:
            out.append((v, "blocked"))
    return tuple(sorted(out))


def form_key(form):
    return (
        form.emphasis.emphatic,
        form.blocking.blocked,
        realization_key(form.realization),
    )


def forms_oracle(field, case_frame, oblique_table, priority):
    """Filter all (emphasis x blocking) pairs; returns (keys, rejected)."""
    scheme = field.scheme
    keys = set()
    rejected_assignment = 0
    for emphatic_paths in emphasis_oracle(field):
        emphatic_vars = {
            v for v in scheme.variables if scheme.variable_site(v)[0] in emphatic_paths
        }
        for blocked_tuple in _powerset(scheme.variables):
            blocked = frozenset(blocked_tuple)
            admissible = True
            for path in emphatic_paths:
                node = scheme.node_at(path)
                if node.is_basic and all(v.name in blocked for v in node.variables):
                    admissible = False
                    break
            if not admissible:
                continue
            result = assign_oracle(
                case_frame, emphatic_vars, blocked, oblique_table, priority
            )
            if result is None:
                rejected_assignment += 1
                continue
            keys.add(
                (
                    frozenset(emphatic_paths),
                    blocked,
                    tuple(sorted(result.items())),
                )
            )
    return keys, rejected_assignment


# ---------------------------------------------------------------------------
# Random generators (plain ``random.Random`` so seeds pin everything)

_LABELS = ("r0", "r1", "r2", "r3")


def random_scheme(rng: random.Random, max_depth: int = 4, max_nodes: int = 8,
                  max_vars: int = 6) -> Scheme:
    """Random scheme strictly within the depth/node/variable bounds."""
    state = {"vars": 0}
    basic_arity = {f"b{i}": rng.randint(1, 2) for i in range(3)}
    basic_names = sorted(basic_arity)
    prop_preds = ["et", "not", "p0", "p1"]

    def leaf(var_budget: int) -> Proposition:
        name = rng.choice(basic_names)
        arity = min(basic_arity[name], var_budget)
        args = []
        for _ in range(arity):
            args.append(Variable(f"v{state['vars']}"))
            state["vars"] += 1
        return Proposition(name, tuple(args))

    def build(depth: int, node_budget: int, var_budget: int) -> Proposition:
        # budgets cover this whole subtree and are always >= 1
        leaf_probability = 0.15 if depth == 0 else 0.35
        if depth >= max_depth or node_budget == 1 or rng.random() < leaf_probability:
            return leaf(var_budget)
        room = node_budget - 1
        if room >= 2 and var_budget >= 2 and rng.random() < 0.6:
            split_nodes = rng.randint(1, room - 1)
            split_vars = rng.randint(1, var_budget - 1)
            children = (
                build(depth + 1, split_nodes, split_vars),
                build(depth + 1, room - split_nodes, var_budget - split_vars),
            )
        else:
            children = (build(depth + 1, room, var_budget),)
        return Proposition(rng.choice(prop_preds), children)

    return Scheme(build(0, max_nodes, max_vars))


def random_field(rng: random.Random, scheme: Scheme | None = None) -> FieldDefinition:
    scheme = scheme or random_scheme(rng)
    start = rng.choice(scheme.paths)
    variables = scheme.variables
    constraints = ()
    if len(variables) >= 2 and rng.random() < 0.6:
        from emphase.scheme import Distinct, Equal, OneOf

        pool = []
        for _ in range(rng.randint(1, 3)):
            a, b = rng.sample(variables, 2)
            kind = rng.randrange(3)
            if kind == 0:
                pool.append(Equal(a, b))
            elif kind == 1:
                pool.append(Distinct(a, b))
            else:
                c, d = rng.sample(variables, 2)
                pool.append(OneOf((Equal(a, b), Equal(c, d))))
        constraints = tuple(pool)
    from emphase.scheme import _default_branches

    return FieldDefinition(
        name=f"field{rng.randrange(100)}",
        scheme=scheme,
        emphasis_start=start,
        constraints=constraints,
        optional_branches=_default_branches(scheme, start),
    )


def random_table(rng: random.Random, scheme: Scheme) -> RoleRuleTable:
    """Total table for the scheme: identity fallbacks everywhere, a
    sprinkling of explicit modifier entries on non-flip predicates."""
    initial: dict[tuple[str, int], Role] = {}
    prop_preds: set[str] = set()
    basic_positions: set[tuple[str, int]] = set()

    def walk(node: Proposition):
        if node.is_basic:
            for i in range(len(node.args)):
                basic_positions.add((node.predicate, i + 1))
        else:
            prop_preds.add(node.predicate)
            for child in node.args:
                walk(child)

    walk(scheme.root)
    anchors = sorted({p for p, _ in basic_positions})
    for predicate, position in sorted(basic_positions):
        initial[(predicate, position)] = Role(rng.choice(_LABELS), predicate)

    modifiers: dict[tuple[str, str, Role], Role] = {}
    for predicate in sorted(prop_preds - {"et", "not"}):
        if rng.random() < 0.5:
            continue
        for anchor in anchors:
            for label in _LABELS:
                for polarity in (POS, NEG):
                    if rng.random() < 0.5:
                        modifiers[(predicate, polarity, Role(label, anchor))] = Role(
                            rng.choice(_LABELS), anchor
                        )
    identities = frozenset(prop_preds | {"et", "not"})
    return RoleRuleTable(initial, modifiers, frozenset({"not"}), identities)


def random_priority(rng: random.Random) -> CasePriority:
    labels = list(_LABELS)
    rng.shuffle(labels)
    cut1 = rng.randint(1, len(labels))
    nominative = tuple(labels[:cut1])
    rest = labels[cut1:]
    return CasePriority(
        nominative=nominative,
        dative=tuple(rest[: rng.randint(0, len(rest))]),
        accusative=tuple(rng.sample(labels, rng.randint(0, 2))),
    )


def random_oblique(rng: random.Random, case_frame) -> ObliqueTable:
    entries = {}
    for role in set(case_frame.values()):
        if rng.random() < 0.5:
            entries[role] = (
                rng.choice(("an", "von", "zu")),
                rng.choice((Case.DATIVE, Case.ACCUSATIVE)),
            )
    return ObliqueTable(entries)


def wrap_scheme(scheme: Scheme, predicate: str, layers: int) -> Scheme:
    root = scheme.root
    for _ in range(layers):
        root = Proposition(predicate, (root,))
    return Scheme(root)


_SYMBOL_CHARS = "abcdefgxyz-?*"
_TEXT_CHARS = 'abc " \\ äöü xyz'


def random_term(rng: random.Random, depth: int = 0):
    roll = rng.random()
    if depth >= 3 or roll < 0.45:
        kind = rng.randrange(3)
        if kind == 0:
            return rng.randint(-999, 999)
        if kind == 1:
            word = "s" + "".join(rng.choice(_SYMBOL_CHARS) for _ in range(rng.randint(1, 6)))
            return word
        return QuotedString(
            "".join(rng.choice(_TEXT_CHARS) for _ in range(rng.randint(0, 8)))
        )
    return [random_term(rng, depth + 1) for _ in range(rng.randint(0, 4))]


def random_spl_term(rng: random.Random, depth: int = 0) -> SplTerm:
    head = f"h{rng.randrange(12)}"
    um_type = rng.choice(("action", "directed-action", "person", "object"))
    slots = []
    for i in range(rng.randint(0, 3)):
        keyword = f":k{rng.randrange(6)}-{i}"
        if depth < 2 and rng.random() < 0.5:
            filler: SplTerm | str = random_spl_term(rng, depth + 1)
        else:
            filler = rng.choice(("emphatic", "nonemphatic", "given", "new"))
        slots.append((keyword, filler))
    return SplTerm(head, um_type, tuple(slots))
