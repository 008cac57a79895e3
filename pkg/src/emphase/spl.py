"""Sentence-plan terms and their canonical text form.

A plan term is ``(head / type :slot filler ...)``: an event or entity
identifier typed by an upper-model name, with keyword slots whose
fillers are nested terms or plain annotation symbols.  Participant
slots come first in the canonical order of the role map (actor,
recipient, actee); the only annotation emitted is ``:emphasis-q``
with value ``emphatic`` or ``nonemphatic`` on a participant filler.

Serialization is canonical (single spaces) and invertible via
``parse_spl``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import sexpr
from .discourse import EmphasisQ
from .errors import ParseError, UnverbalizedRoleError
from .lexicon import ProcessSelection, VerbEntry
from .scheme import Binding
from .sexpr import QuotedString

RECIPIENT_ROLE = "recipient"


@dataclass(frozen=True)
class SplTerm:
    """Typed plan term with ordered keyword slots."""

    head: str
    um_type: str
    slots: tuple[tuple[str, "SplTerm | str"], ...] = ()

    def __post_init__(self):
        for keyword, _ in self.slots:
            if not keyword.startswith(":"):
                raise ValueError(f"slot keyword must start with ':': {keyword!r}")

    def slot(self, keyword: str) -> "SplTerm | str | None":
        for kw, filler in self.slots:
            if kw == keyword:
                return filler
        return None


def build_spl(
    form,
    selection: ProcessSelection,
    verb: VerbEntry,
    binding: Binding,
    emphasis_q: EmphasisQ | None = None,
) -> SplTerm:
    """Plan term for one classified form under a validated binding.

    The head is the verb's event symbol; each participant is filled
    with ``(referent / sort)``; an emphasis-q annotation, when given,
    rides on the recipient filler.
    """
    if emphasis_q is not None and selection.variable_for(RECIPIENT_ROLE) is None:
        raise UnverbalizedRoleError(
            "emphasis-q requested but the form verbalizes no recipient"
        )
    slots: list[tuple[str, SplTerm | str]] = []
    for um_role, variable in selection.participants:
        referent = binding.referent(variable)
        if referent is None:
            raise UnverbalizedRoleError(
                f"binding has no referent for participant variable {variable}"
            )
        annotations: tuple[tuple[str, SplTerm | str], ...] = ()
        if emphasis_q is not None and um_role == RECIPIENT_ROLE:
            annotations = ((":emphasis-q", emphasis_q.value),)
        slots.append(
            (":" + um_role, SplTerm(referent.name, referent.sort, annotations))
        )
    return SplTerm(verb.event, selection.um_type, tuple(slots))


def _term_to_sexpr(term: SplTerm) -> list:
    out: list = [term.head, "/", term.um_type]
    for keyword, filler in term.slots:
        out.append(keyword)
        out.append(_term_to_sexpr(filler) if isinstance(filler, SplTerm) else filler)
    return out


def serialize_spl(term: SplTerm) -> str:
    """Canonical one-line text of the plan term."""
    return sexpr.write(_term_to_sexpr(term))


def _term_from_sexpr(value) -> SplTerm:
    if (
        not isinstance(value, list)
        or len(value) < 3
        or value[1] != "/"
        or not isinstance(value[0], str)
        or not isinstance(value[2], str)
        or isinstance(value[0], QuotedString)
        or isinstance(value[2], QuotedString)
    ):
        raise ParseError("a plan term looks like (head / type :slot filler ...)")
    rest = value[3:]
    if len(rest) % 2 != 0:
        raise ParseError("plan slots come in :keyword filler pairs")
    slots: list[tuple[str, SplTerm | str]] = []
    for i in range(0, len(rest), 2):
        keyword = rest[i]
        if not isinstance(keyword, str) or not keyword.startswith(":"):
            raise ParseError(f"expected a :keyword, got {keyword!r}")
        filler = rest[i + 1]
        if isinstance(filler, list):
            slots.append((keyword, _term_from_sexpr(filler)))
        elif isinstance(filler, str) and not isinstance(filler, QuotedString):
            slots.append((keyword, filler))
        else:
            raise ParseError(f"bad filler for {keyword}: {filler!r}")
    return SplTerm(value[0], value[2], tuple(slots))


def parse_spl(text: str) -> SplTerm:
    """Inverse of ``serialize_spl`` (whitespace-insensitive)."""
    return _term_from_sexpr(sexpr.read(text))
