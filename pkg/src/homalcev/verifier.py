"""Classification, the equivalence scan and the premise-gated lemma suite."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .constructions import (
    HOM_LIE_CLASS,
    HOM_MALCEV_CLASS,
    MALCEV_CLASS,
    NOT_HOM_MALCEV_CLASS,
    WeightedGenSpec,
    random_weighted_algebra,
)
from .identities import (
    DEFAULT_MAX_VIOLATIONS,
    SKEW_LEMMAS,
    G_LEMMAS,
    IdentityResult,
    VerificationReport,
    check_identities,
    holds_all,
)
from .superalgebra import (
    SuperAlgebra,
    check_multiplicativity,
    check_super_anticommutativity,
)

EQUIVALENCE_TRIPLE = ("HOM_MALCEV", "S1", "IDENT_C")

# a seeded even algebra failing all three predicates; guarantees negative coverage
COVERAGE_FIXTURE = WeightedGenSpec(3, (0, 0, 0), (0, 0, 0), 1, 3, 42)


@dataclass(frozen=True)
class StructureClass:
    anticommutative: bool
    multiplicative: bool
    hom_lie: bool
    hom_malcev: bool
    s1_holds: bool
    ident_c_holds: bool
    malcev_plain: bool

    def label(self, alpha_is_identity: bool) -> str:
        if not (self.anticommutative and self.multiplicative):
            return NOT_HOM_MALCEV_CLASS
        if self.hom_lie:
            return HOM_LIE_CLASS
        if self.hom_malcev:
            return MALCEV_CLASS if alpha_is_identity else HOM_MALCEV_CLASS
        return NOT_HOM_MALCEV_CLASS

    def as_dict(self) -> dict:
        return asdict(self)


def classify(A: SuperAlgebra) -> StructureClass:
    """Premise checks plus HOM_LIE, HOM_MALCEV, S1, IDENT_C and MALCEV_SUPER.

    MALCEV_SUPER never touches alpha, so it is the Malcev test of the
    underlying product with alpha replaced by the identity.
    """
    flags = holds_all(A, ("HOM_LIE",) + EQUIVALENCE_TRIPLE + ("MALCEV_SUPER",))
    return StructureClass(
        anticommutative=not check_super_anticommutativity(A),
        multiplicative=not check_multiplicativity(A),
        hom_lie=flags["HOM_LIE"],
        hom_malcev=flags["HOM_MALCEV"],
        s1_holds=flags["S1"],
        ident_c_holds=flags["IDENT_C"],
        malcev_plain=flags["MALCEV_SUPER"],
    )


@dataclass(frozen=True)
class EquivalenceRecord:
    source: str
    index: int
    seed: int | None
    hom_malcev: bool
    s1_holds: bool
    ident_c_holds: bool

    @property
    def triple(self) -> tuple[bool, bool, bool]:
        return (self.hom_malcev, self.s1_holds, self.ident_c_holds)

    @property
    def agreement(self) -> bool:
        return len(set(self.triple)) == 1


def equivalence_record(A: SuperAlgebra, index: int = 0, seed: int | None = None) -> EquivalenceRecord:
    flags = holds_all(A, EQUIVALENCE_TRIPLE)
    return EquivalenceRecord(A.name, index, seed, *(flags[k] for k in EQUIVALENCE_TRIPLE))


def _record_for(job) -> EquivalenceRecord:
    index, spec = job
    return equivalence_record(random_weighted_algebra(spec), index, spec.seed)


def equivalence_scan(
    specs: Sequence[WeightedGenSpec], trials: int = 1, workers: int = 1
) -> list[EquivalenceRecord]:
    """Evaluate HOM_MALCEV, S1 and IDENT_C on generated algebras.

    Each spec is run ``trials`` times with seeds ``spec.seed + k``.  Output
    is ordered by (spec index, seed) whatever the worker count.
    """
    jobs = [(i, spec.with_seed(spec.seed + k)) for i, spec in enumerate(specs) for k in range(trials)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_record_for, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_record_for(job) for job in jobs]


def scan_algebras(algebras: Iterable[SuperAlgebra]) -> list[EquivalenceRecord]:
    return [equivalence_record(A, i) for i, A in enumerate(algebras)]


@dataclass(frozen=True)
class ScanSummary:
    records: int
    disagreements: int
    all_true: int
    all_false: int

    @property
    def covered(self) -> bool:
        return self.all_true > 0 and self.all_false > 0

    @property
    def ok(self) -> bool:
        return self.disagreements == 0 and self.covered


def summarize(records: Sequence[EquivalenceRecord]) -> ScanSummary:
    return ScanSummary(
        records=len(records),
        disagreements=sum(not r.agreement for r in records),
        all_true=sum(r.triple == (True, True, True) for r in records),
        all_false=sum(r.triple == (False, False, False) for r in records),
    )


def random_specs(
    count: int,
    seed: int,
    dims: Sequence[int] = (2, 3, 4),
    parities: str | Sequence[int] = "mixed",
    lambdas: Sequence[object] = (1, 2),
    bound: int = 3,
    max_weight: int = 2,
) -> list[WeightedGenSpec]:
    """Deterministic list of generator specs drawn from one master seed.

    ``parities`` is ``"mixed"`` (random per spec), ``"even"``, ``"odd"``
    or an explicit 0/1 vector (which then fixes the dimension).
    """
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        if isinstance(parities, str):
            d = rng.choice(list(dims))
            if parities == "mixed":
                par = tuple(rng.randint(0, 1) for _ in range(d))
            elif parities in ("even", "odd"):
                par = (int(parities == "odd"),) * d
            else:
                raise ValueError(f"unknown parity mode {parities!r}")
        else:
            par = tuple(parities)
            d = len(par)
        weights = tuple(rng.randint(0, max_weight) for _ in range(d))
        lam = Fraction(rng.choice(list(lambdas)))
        out.append(WeightedGenSpec(d, par, weights, lam, bound, rng.randrange(2**31)))
    return out


def lemma_suite(A: SuperAlgebra, max_violations: int = DEFAULT_MAX_VIOLATIONS) -> VerificationReport:
    """Lemma identities, gated on their premises.

    The J~ symmetry/expansion identities need anticommutativity and
    multiplicativity; the G identities additionally need HOM_MALCEV.
    Identities whose premise fails are reported as ``skipped``.
    """
    report = VerificationReport(A.name)
    skew_mult = not check_super_anticommutativity(A) and not check_multiplicativity(A)
    hom_malcev = skew_mult and holds_all(A, ("HOM_MALCEV",))["HOM_MALCEV"]
    run = list(SKEW_LEMMAS) if skew_mult else []
    if hom_malcev:
        run += list(G_LEMMAS)
    results = check_identities(A, run, max_violations) if run else {}
    for key in SKEW_LEMMAS + G_LEMMAS:
        report.results[key] = results.get(key, IdentityResult(key, "skipped"))
    return report
