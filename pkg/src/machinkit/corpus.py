"""Bundled corpus of known Machin-type formulae.

Classes:
    - CorpusFile: A parsed relation file

Functions:
    - bundled_corpus_text: Text of the bundled corpus
    - load_corpus: Parse a relation file
    - perturbations: Every single-coefficient perturbation of a relation
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from importlib.resources import files
from pathlib import Path

from machinkit.relations import ArctanRelation, format_relation, parse_relations

MACHIN = ArctanRelation(((5, 4), (239, -1)), 1)
EULER = ArctanRelation(((2, 1), (3, 1)), 1)
HUTTON = ArctanRelation(((2, 2), (7, -1)), 1)
HERMANN = ArctanRelation(((3, 2), (7, 1)), 1)
SIMSON = ArctanRelation(((10, 8), (239, -1), (515, -4)), 1)
GAUSS = ArctanRelation(((18, 12), (57, 8), (239, -5)), 1)
WRENCH_2 = ArctanRelation(((2, 5), (53, 2), (4443, 1)), 3)
WRENCH_3 = ArctanRelation(((3, 5), (53, -2), (4443, -1)), 2)
WRENCH_7 = ArctanRelation(((7, 5), (53, 4), (4443, 2)), 1)

NAMED_RELATIONS: dict[str, ArctanRelation] = {
    "machin": MACHIN,
    "euler": EULER,
    "hutton": HUTTON,
    "hermann": HERMANN,
    "simson": SIMSON,
    "gauss": GAUSS,
    "wrench-2": WRENCH_2,
    "wrench-3": WRENCH_3,
    "wrench-7": WRENCH_7,
}


@dataclass
class CorpusFile:
    """A relation file parsed with the one-line relation grammar.

    Attributes:
        path: Where the text came from (None for in-memory text).
        entries: (line_number, relation) pairs in file order.
    """

    path: Path | None
    entries: list[tuple[int, ArctanRelation]] = field(default_factory=list)

    @property
    def relations(self) -> list[ArctanRelation]:
        return [rel for _, rel in self.entries]

    def format(self) -> str:
        """Render the relations back to text, one per line, comments dropped."""
        return "".join(f"{format_relation(rel)}\n" for rel in self.relations)


def bundled_corpus_text() -> str:
    return files("machinkit").joinpath("data/corpus.txt").read_text(encoding="utf-8")


def load_corpus(path: str | Path | None = None) -> CorpusFile:
    """Parse a relation file, or the bundled corpus when path is None.

    Raises:
        FileNotFoundError: If the file does not exist.
        RelationParseError: On the first malformed line.
    """
    if path is None:
        return CorpusFile(None, parse_relations(bundled_corpus_text()))
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Relation file not found: {path}")
    return CorpusFile(path, parse_relations(path.read_text(encoding="utf-8")))


def perturbations(rel: ArctanRelation) -> Iterator[ArctanRelation]:
    """Yield every relation with exactly one coefficient (or r) moved by ±1.

    A coefficient that would become zero is skipped.
    """
    for index, (x, y) in enumerate(rel.terms):
        for delta in (-1, 1):
            if y + delta == 0:
                continue
            terms = list(rel.terms)
            terms[index] = (x, y + delta)
            yield ArctanRelation(tuple(terms), rel.r)
    for delta in (-1, 1):
        yield rel.with_r(rel.r + delta)
