"""Tagged-corpus loading and projection onto an ambiguity class.

The corpus format is one token per line, ``form<TAB>tag``; lines starting
with ``#`` are comments and blank lines are ignored.  An ambiguity class
declares which surface forms and tags take part (e.g. Dutch forms in -en
that are either infinitives or finite plurals) and maps corpus tags onto a
small set of function labels.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from pathlib import Path


class CorpusFormatError(ValueError):
    """Malformed corpus or class-spec file (carries the offending line number)."""


@dataclass(frozen=True)
class ClassSpec:
    """An ambiguity class: a surface filter plus a tag-to-function mapping.

    functions is the ordered list of function labels; tokens carry an index
    into it.  suffix is a literal suffix filter ("" matches every form).
    Every function label must be reachable from at least one corpus tag.
    """

    name: str
    functions: tuple[str, ...]
    suffix: str
    tag_map: dict[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "functions", tuple(self.functions))
        if len(self.functions) < 2:
            raise ValueError(f"class {self.name!r} needs >=2 function labels")
        if len(set(self.functions)) != len(self.functions):
            raise ValueError(f"class {self.name!r} has duplicate function labels")
        unknown = set(self.tag_map.values()) - set(self.functions)
        if unknown:
            raise ValueError(f"tag_map targets unknown labels: {sorted(unknown)}")
        unmapped = set(self.functions) - set(self.tag_map.values())
        if unmapped:
            raise ValueError(f"no corpus tag maps to: {sorted(unmapped)}")

    @property
    def n_functions(self) -> int:
        return len(self.functions)

    def function_index(self, label: str) -> int:
        try:
            return self.functions.index(label)
        except ValueError:
            raise KeyError(f"unknown function label {label!r} for class {self.name!r}") from None

    def tag_for(self, function: int) -> str:
        """First corpus tag mapping to the given function (for serialization)."""
        label = self.functions[function]
        for tag, target in self.tag_map.items():
            if target == label:
                return tag
        raise KeyError(label)  # unreachable: __post_init__ guarantees coverage


@dataclass(frozen=True)
class TokenRecord:
    """One corpus token: surface form plus function index."""

    form: str
    function: int

    def __post_init__(self) -> None:
        if not self.form.strip():
            raise ValueError("token form is empty")
        if self.function < 0:
            raise ValueError(f"negative function index {self.function}")


@dataclass(frozen=True)
class TaggedCorpus:
    """Tokens of one ambiguity class, in input order.

    dropped counts input lines excluded by the suffix filter or an unmapped
    tag, so tokens + dropped equals the number of data lines read.
    """

    spec: ClassSpec
    tokens: tuple[TokenRecord, ...] = ()
    dropped: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))
        n = self.spec.n_functions
        for tok in self.tokens:
            if tok.function >= n:
                raise ValueError(f"token {tok.form!r} has function index {tok.function} >= {n}")
            if not tok.form.endswith(self.spec.suffix):
                raise ValueError(f"token {tok.form!r} does not end with {self.spec.suffix!r}")

    def __len__(self) -> int:
        return len(self.tokens)


def load_class_spec(path: str | Path) -> ClassSpec:
    """Read an ambiguity-class file.

    Expected layout (blank and '#' lines ignored)::

        name=<id>
        suffix=<string>
        functions=<label>,<label>,...
        map <TAG> <label>
        ...
    """
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusFormatError(f"cannot read class spec {path}: {exc}") from exc

    lines = [
        (no, line.strip())
        for no, line in enumerate(raw.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if len(lines) < 4:
        raise CorpusFormatError(f"{path}: expected name=, suffix=, functions= and map lines")

    def keyval(idx: int, key: str) -> str:
        no, line = lines[idx]
        prefix = key + "="
        if not line.startswith(prefix):
            raise CorpusFormatError(f"{path}:{no}: expected '{prefix}...', got {line!r}")
        return line[len(prefix):].strip()

    name = keyval(0, "name")
    suffix = keyval(1, "suffix")
    functions = tuple(f.strip() for f in keyval(2, "functions").split(",") if f.strip())

    tag_map: dict[str, str] = {}
    for no, line in lines[3:]:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "map":
            raise CorpusFormatError(f"{path}:{no}: expected 'map <TAG> <label>', got {line!r}")
        _, tag, label = parts
        if tag in tag_map:
            raise CorpusFormatError(f"{path}:{no}: duplicate mapping for tag {tag!r}")
        tag_map[tag] = label

    try:
        return ClassSpec(name=name, functions=functions, suffix=suffix, tag_map=tag_map)
    except ValueError as exc:
        raise CorpusFormatError(f"{path}: {exc}") from exc


def load_corpus(path: str | Path, spec: ClassSpec, fold_case: bool = False) -> TaggedCorpus:
    """Load a ``form<TAB>tag`` file and project it onto `spec`.

    Tokens are kept iff the form ends with spec.suffix and the tag is mapped;
    everything else is counted in `dropped`.  A data line without exactly two
    tab-separated fields raises CorpusFormatError naming the line number.
    An empty result is not an error.
    """
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusFormatError(f"cannot read corpus {path}: {exc}") from exc

    tokens: list[TokenRecord] = []
    dropped = 0
    for no, line in enumerate(raw.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise CorpusFormatError(f"{path}:{no}: expected 'form<TAB>tag', got {len(fields)} fields")
        form, tag = fields[0].strip(), fields[1].strip()
        if not form:
            raise CorpusFormatError(f"{path}:{no}: empty form")
        if fold_case:
            form = form.lower()
        label = spec.tag_map.get(tag)
        if label is None or not form.endswith(spec.suffix):
            dropped += 1
            continue
        tokens.append(TokenRecord(form=form, function=spec.function_index(label)))
    return TaggedCorpus(spec=spec, tokens=tuple(tokens), dropped=dropped)


def save_corpus(corpus: TaggedCorpus, path: str | Path, header: str | None = None) -> None:
    """Write a corpus back out in the ``form<TAB>tag`` format.

    Each function is serialized via its first mapped tag, so a reload under
    the same spec reproduces the token sequence.  `header`, if given, is
    written first as a '#' comment line.
    """
    tags = [corpus.spec.tag_for(i) for i in range(corpus.spec.n_functions)]
    with open(path, "w", encoding="utf-8") as fh:
        if header is not None:
            fh.write(f"# {header}\n")
        for tok in corpus.tokens:
            fh.write(f"{tok.form}\t{tags[tok.function]}\n")


def save_class_spec(spec: ClassSpec, path: str | Path) -> None:
    """Write an ambiguity-class file readable by load_class_spec."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"name={spec.name}\n")
        fh.write(f"suffix={spec.suffix}\n")
        fh.write(f"functions={','.join(spec.functions)}\n")
        for tag, label in spec.tag_map.items():
            fh.write(f"map {tag} {label}\n")


def shuffled_order(n: int, seed: int) -> list[int]:
    """The seeded permutation of range(n) that shuffle_tokens applies."""
    order = list(range(n))
    random.Random(seed).shuffle(order)
    return order


def shuffle_tokens(corpus: TaggedCorpus, seed: int) -> TaggedCorpus:
    """Return a seeded permutation of the corpus (same token multiset)."""
    order = shuffled_order(len(corpus.tokens), seed)
    return replace(corpus, tokens=tuple(corpus.tokens[i] for i in order))
