"""Token-level k-fold cross-validation comparing the overall and hapax-based
estimators on the tokens of held-out types unseen in training."""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import TaggedCorpus, shuffled_order
from .estimators import ExpectedCounts, PriorEstimate, expected_unseen_counts, hapax_mle, overall_mle
from .spectrum import build_spectrum
from .stats import TTestResult, paired_t


class CrossValError(RuntimeError):
    """A fold-level failure, carrying the 1-based fold index."""

    def __init__(self, fold: int, message: str):
        super().__init__(f"fold {fold}: {message}")
        self.fold = fold


@dataclass(frozen=True)
class FoldPlan:
    """Fold index (1..k) per original token position.

    Produced by seeding a shuffle and slicing the shuffled sequence into k
    contiguous parts whose sizes differ by at most one; remainder tokens go
    one per fold to the lowest-indexed folds.
    """

    k: int
    seed: int
    assignments: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignments", tuple(self.assignments))

    def fold_sizes(self) -> list[int]:
        sizes = [0] * self.k
        for a in self.assignments:
            sizes[a - 1] += 1
        return sizes


@dataclass(frozen=True)
class FoldResult:
    """One cross-validation run: training totals, both estimates, and the
    observed vs. expected counts for held-out tokens of unseen types."""

    run: int
    train_totals: tuple[int, ...]
    hapax_totals: tuple[int, ...]
    omle: PriorEstimate
    hmle: PriorEstimate
    unseen_observed: tuple[int, ...]
    expected_o: ExpectedCounts
    expected_h: ExpectedCounts

    @property
    def n_unseen(self) -> int:
        return sum(self.unseen_observed)

    @property
    def has_unseen(self) -> bool:
        return self.n_unseen > 0


@dataclass(frozen=True)
class CrossValReport:
    spec_name: str
    k: int
    seed: int
    ratio: tuple[str, str]
    folds: tuple[FoldResult, ...]
    ttest_o: TTestResult
    ttest_h: TTestResult


def make_folds(corpus: TaggedCorpus, k: int, seed: int) -> FoldPlan:
    """Partition token positions into k near-equal folds, seeded.

    Equivalent to shuffling the corpus with shuffle_tokens(corpus, seed) and
    slicing the result contiguously.
    """
    n = len(corpus.tokens)
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k > n:
        raise ValueError(f"k = {k} exceeds the token count {n}")
    order = shuffled_order(n, seed)
    base, extra = divmod(n, k)
    assignments = [0] * n
    pos = 0
    for fold in range(1, k + 1):
        size = base + (1 if fold <= extra else 0)
        for _ in range(size):
            assignments[order[pos]] = fold
            pos += 1
    return FoldPlan(k=k, seed=seed, assignments=tuple(assignments))


def run_fold(corpus: TaggedCorpus, plan: FoldPlan, fold: int) -> FoldResult:
    """Train both estimators outside `fold` and score the held-out tokens.

    unseen_observed counts held-out tokens per function whose form never
    occurs in the training portion; both expected-count vectors spread that
    total according to the corresponding estimate.  Raises NoHapaxesError if
    the training portion has no hapaxes.  Zero unseen tokens is a valid
    result (has_unseen is False) with all-zero counts.
    """
    if not 1 <= fold <= plan.k:
        raise ValueError(f"fold must be in 1..{plan.k}, got {fold}")
    if len(plan.assignments) != len(corpus.tokens):
        raise ValueError("plan does not cover this corpus")

    train = [tok for tok, a in zip(corpus.tokens, plan.assignments) if a != fold]
    held_out = [tok for tok, a in zip(corpus.tokens, plan.assignments) if a == fold]

    table = build_spectrum(TaggedCorpus(spec=corpus.spec, tokens=tuple(train)))
    omle = overall_mle(table)
    hmle = hapax_mle(table)

    unseen = [0] * corpus.spec.n_functions
    for tok in held_out:
        if tok.form not in table.types:
            unseen[tok.function] += 1
    n_unseen = sum(unseen)

    return FoldResult(
        run=fold,
        train_totals=table.token_totals,
        hapax_totals=table.hapax_totals,
        omle=omle,
        hmle=hmle,
        unseen_observed=tuple(unseen),
        expected_o=expected_unseen_counts(omle, n_unseen),
        expected_h=expected_unseen_counts(hmle, n_unseen),
    )


def run_crossval(
    corpus: TaggedCorpus,
    k: int,
    seed: int,
    ratio: tuple[str, str] | None = None,
) -> CrossValReport:
    """Run all k folds and the paired ratio t-tests for both estimators.

    Per fold, the observed ratio is unseen_observed[num]/unseen_observed[den]
    and each expected ratio uses the unrounded expected counts.  Any fold
    error, or a zero denominator in any ratio, raises CrossValError naming
    the fold.
    """
    spec = corpus.spec
    if ratio is None:
        ratio = (spec.functions[0], spec.functions[1])
    num = spec.function_index(ratio[0])
    den = spec.function_index(ratio[1])

    plan = make_folds(corpus, k, seed)
    folds: list[FoldResult] = []
    for fold in range(1, k + 1):
        try:
            folds.append(run_fold(corpus, plan, fold))
        except (ValueError, ArithmeticError) as exc:
            raise CrossValError(fold, str(exc)) from exc

    observed: list[float] = []
    ratios_o: list[float] = []
    ratios_h: list[float] = []
    for fr in folds:
        for label, vec in (
            ("observed", fr.unseen_observed),
            ("overall-expected", fr.expected_o.real),
            ("hapax-expected", fr.expected_h.real),
        ):
            if vec[den] == 0:
                raise CrossValError(fr.run, f"zero denominator in {label} ratio {ratio[0]}/{ratio[1]}")
        observed.append(fr.unseen_observed[num] / fr.unseen_observed[den])
        ratios_o.append(fr.expected_o.real[num] / fr.expected_o.real[den])
        ratios_h.append(fr.expected_h.real[num] / fr.expected_h.real[den])

    return CrossValReport(
        spec_name=spec.name,
        k=k,
        seed=seed,
        ratio=ratio,
        folds=tuple(folds),
        ttest_o=paired_t(observed, ratios_o),
        ttest_h=paired_t(observed, ratios_h),
    )
