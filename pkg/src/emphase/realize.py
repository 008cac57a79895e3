"""Template-based German surface realization.

One fixed declarative verb-second template covers the shipped field:
nominative subject, finite verb (present, 3sg), then dative object,
accusative object, prepositional objects, separable prefix, full stop.
Because the dative slot always precedes the accusative slot, a dative
pronoun can never trail an accusative object.  The clause-final content
constituent is the focus position: a participant verbalized with
emphatic status (dative) is refused there.

Noun phrases come from a small per-referent lexicon (noun with gender
and definiteness, or pronoun) inflected through determiner/pronoun
form tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import sexpr
from .discourse import EmphasisQ
from .emphasis import Case, Oblique, SemanticForm
from .errors import (
    InputError,
    MissingMorphologyError,
    OrderingConflictError,
    ParseError,
)
from .lexicon import VerbEntry
from .scheme import Binding
from .sexpr import QuotedString


class Gender(Enum):
    MASCULINE = "masc"
    FEMININE = "fem"
    NEUTER = "neut"


class Definiteness(Enum):
    DEFINITE = "def"
    INDEFINITE = "indef"
    PRONOUN = "pronoun"


@dataclass(frozen=True)
class NPSpec:
    """One noun phrase to inflect; pronouns ignore definiteness."""

    head: str  # noun lemma or referent name for pronouns
    case: Case
    gender: Gender
    definiteness: Definiteness
    number: str = "sg"


@dataclass(frozen=True)
class NounEntry:
    lemma: str
    gender: Gender
    definiteness: Definiteness


@dataclass(frozen=True)
class PronounEntry:
    gender: Gender


NPLexicon = dict[str, "NounEntry | PronounEntry"]


@dataclass(frozen=True)
class MorphTable:
    articles: dict[tuple[Definiteness, Gender, Case], str]
    pronouns: dict[tuple[Gender, Case], str]


def inflect_np(spec: NPSpec, table: MorphTable) -> str:
    """Inflected NP text, e.g. ``den Schlüssel`` or ``ihm``."""
    if spec.definiteness is Definiteness.PRONOUN:
        form = table.pronouns.get((spec.gender, spec.case))
        if form is None:
            raise MissingMorphologyError(
                f"no {spec.gender.value} pronoun form for {spec.case.value}"
            )
        return form
    article = table.articles.get((spec.definiteness, spec.gender, spec.case))
    if article is None:
        raise MissingMorphologyError(
            f"no {spec.definiteness.value} {spec.gender.value} article "
            f"for {spec.case.value}"
        )
    return f"{article} {spec.head}"


def np_spec_for(referent_name: str, case: Case, np_lexicon: NPLexicon) -> NPSpec:
    entry = np_lexicon.get(referent_name)
    if entry is None:
        raise MissingMorphologyError(f"no NP entry for referent {referent_name}")
    if isinstance(entry, PronounEntry):
        return NPSpec(referent_name, case, entry.gender, Definiteness.PRONOUN)
    return NPSpec(entry.lemma, case, entry.gender, entry.definiteness)


def realize(
    form: SemanticForm,
    verb: VerbEntry,
    binding: Binding,
    np_lexicon: NPLexicon,
    morph_table: MorphTable,
    emphasis_q: EmphasisQ | None = None,
) -> str:
    """Declarative sentence for a form its verb lexicalizes."""
    if not verb.matches(form):
        raise InputError(
            f"verb {verb.lemma!r} does not lexicalize this form's pattern"
        )

    def np_text(variable: str, case: Case) -> str:
        referent = binding.referent(variable)
        if referent is None:
            raise InputError(f"binding has no referent for variable {variable}")
        return inflect_np(np_spec_for(referent.name, case, np_lexicon), morph_table)

    subjects = form.realization.variables_with(Case.NOMINATIVE)
    if len(subjects) != 1:
        raise InputError("the template needs exactly one nominative participant")
    if form.realization.variables_with(Case.GENITIVE):
        raise InputError("genitive participants are outside the template")
    datives = form.realization.variables_with(Case.DATIVE)
    accusatives = form.realization.variables_with(Case.ACCUSATIVE)
    obliques = form.realization.oblique_variables()

    middle: list[tuple[str, str]] = []  # (variable, text)
    for v in datives:
        middle.append((v, np_text(v, Case.DATIVE)))
    for v in accusatives:
        middle.append((v, np_text(v, Case.ACCUSATIVE)))
    for v in obliques:
        oblique = form.realization.of(v)
        assert isinstance(oblique, Oblique)
        middle.append(
            (v, f"{oblique.preposition} {np_text(v, oblique.governed)}")
        )

    if emphasis_q is EmphasisQ.EMPHATIC:
        if not datives:
            raise OrderingConflictError(
                "emphatic recipient status requires a dative participant"
            )
        if middle and middle[-1][0] == datives[0]:
            raise OrderingConflictError(
                "the emphatic (dative) participant would end up in "
                "clause-final focus position"
            )

    words = [np_text(subjects[0], Case.NOMINATIVE), verb.present_3sg]
    words.extend(text for _, text in middle)
    if verb.prefix:
        words.append(verb.prefix)
    sentence = " ".join(words)
    return sentence[0].upper() + sentence[1:] + "."


# ---------------------------------------------------------------------------
# Data files


def _gender_from(term) -> Gender:
    for gender in Gender:
        if gender.value == term:
            return gender
    raise ParseError(f"unknown gender {term!r}")


def _case_from(term) -> Case:
    for case in Case:
        if case.value == term:
            return case
    raise ParseError(f"unknown grammatical case {term!r}")


def parse_np_lexicon(text: str) -> NPLexicon:
    """Parse ``(np referent lemma gender def|indef)`` and
    ``(pronoun referent gender)`` entries."""
    lexicon: NPLexicon = {}
    for term in sexpr.read_all(text):
        if not isinstance(term, list) or not term or not isinstance(term[0], str):
            raise ParseError("NP lexicon entries are parenthesized terms")
        if term[0] == "np":
            if len(term) != 5 or not all(isinstance(x, str) for x in term[1:]):
                raise ParseError("(np <referent> <lemma> <gender> <definiteness>)")
            key = term[1]
            definiteness = {
                "def": Definiteness.DEFINITE,
                "indef": Definiteness.INDEFINITE,
            }.get(term[4])
            if definiteness is None:
                raise ParseError(f"noun definiteness must be def or indef, got {term[4]!r}")
            entry: NounEntry | PronounEntry = NounEntry(
                term[2], _gender_from(term[3]), definiteness
            )
        elif term[0] == "pronoun":
            if len(term) != 3 or not all(isinstance(x, str) for x in term[1:]):
                raise ParseError("(pronoun <referent> <gender>)")
            key = term[1]
            entry = PronounEntry(_gender_from(term[2]))
        else:
            raise ParseError(f"unknown NP lexicon entry {term[0]!r}")
        if key in lexicon:
            raise ParseError(f"duplicate NP entry for referent {key}")
        lexicon[key] = entry
    return lexicon


def parse_morph_table(text: str) -> MorphTable:
    """Parse ``(article def|indef gender case form)`` and
    ``(pronoun-form gender case form)`` rows."""
    articles: dict[tuple[Definiteness, Gender, Case], str] = {}
    pronouns: dict[tuple[Gender, Case], str] = {}
    for term in sexpr.read_all(text):
        if not isinstance(term, list) or not term or not isinstance(term[0], str):
            raise ParseError("morphology entries are parenthesized terms")
        if term[0] == "article":
            if len(term) != 5 or not all(
                isinstance(x, str) and not isinstance(x, QuotedString) for x in term[1:]
            ):
                raise ParseError("(article def|indef <gender> <case> <form>)")
            definiteness = {
                "def": Definiteness.DEFINITE,
                "indef": Definiteness.INDEFINITE,
            }.get(term[1])
            if definiteness is None:
                raise ParseError(f"article definiteness must be def or indef, got {term[1]!r}")
            key = (definiteness, _gender_from(term[2]), _case_from(term[3]))
            if key in articles:
                raise ParseError(f"duplicate article row {term[1:4]}")
            articles[key] = term[4]
        elif term[0] == "pronoun-form":
            if len(term) != 4 or not all(
                isinstance(x, str) and not isinstance(x, QuotedString) for x in term[1:]
            ):
                raise ParseError("(pronoun-form <gender> <case> <form>)")
            pkey = (_gender_from(term[1]), _case_from(term[2]))
            if pkey in pronouns:
                raise ParseError(f"duplicate pronoun row {term[1:3]}")
            pronouns[pkey] = term[3]
        else:
            raise ParseError(f"unknown morphology entry {term[0]!r}")
    return MorphTable(articles, pronouns)
