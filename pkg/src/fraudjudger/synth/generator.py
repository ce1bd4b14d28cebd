"""Deterministic synthetic corpus generator with planted fraud patterns.

Users belong to generative families. The planted structure is deliberately
non-linear: fraud lives at *both* extremes of the amount axis (card-testing
micro payments, laundering macro payments) but only during night hours,
while benign families cover every single marginal — micro spenders, heavy
spenders, night owls — so no one feature separates the classes. Fraud
families additionally share a small pool of "infrastructure" devices/IPs
which benign users touch only rarely (public terminals), giving the fraud
population a common subspace without making any single column a giveaway.

One fraud family can be marked novel: its users are never eligible for
training labels, reuse the shared infrastructure at a lower rate, and have
their own hour/amount signature — the pattern the discovery pipeline must
surface by co-clustering it with detected fraud in latent space.

Every user also gets a personal profile (own devices, IPs, hour window,
spending offset) drawn around the family profile, so within-family variance
is high and memorizing individual categories does not generalize.

Missing values are planted per feature at configurable rates. Everything is
driven by one seed and reruns are byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from datetime import datetime, timedelta

import numpy as np

from ..errors import ConfigError
from ..features.records import (
    OPERATION_FIELDS,
    TRANSACTION_FIELDS,
    OperationRecord,
    RecordSet,
    TransactionRecord,
    TIME_FORMAT,
)

# Planted per-feature missing rates.
DEFAULT_MISSING_OPERATION = {
    "mode": 0.0, "time": 0.0, "device": 0.293, "version": 0.19,
    "ip": 0.18, "mac": 0.899, "os": 0.0, "geo_code": 0.339,
}
DEFAULT_MISSING_TRANSACTION = {
    "time": 0.0, "device": 0.342, "tran_amt": 0.0, "ip": 0.146,
    "channel": 0.0, "acc_id": 0.621, "balance": 0.0, "trans_type": 0.0,
}

# Category pool sizes (common pools; fraud infrastructure pools are extra).
POOL_SIZES = {
    "mode": 10, "device": 140, "version": 12, "ip": 200, "mac": 80,
    "os": 6, "geo_code": 90, "channel": 6, "acc_id": 300, "trans_type": 10,
}
FRAUD_POOL_SIZES = {"device": 2, "ip": 2, "os": 2}

# Per-user personal category pools: feature -> (min size, max size).
PERSONAL_POOL_SPECS = {
    "device": (2, 4), "ip": (3, 6), "version": (1, 2),
    "os": (1, 1), "geo_code": (1, 3),
}
PERSONAL_INFRA_SPECS = {"device": (1, 2), "ip": (1, 2), "os": (1, 1)}
PERSONAL_LOYALTY = 0.85     # prob. a draw comes from the personal pool
# Benign use of shared terminals: (weight, low, high) mixture over users.
# The heavy tail overlaps the fraud range, so total infrastructure usage
# alone cannot separate the classes.
BENIGN_INFRA_MIX = (
    (0.56, 0.0, 0.04, None),
    (0.16, 0.55, 0.75, ("device", "ip")),
    (0.14, 0.55, 0.75, ("os",)),
    (0.14, 0.55, 0.75, None),
)


@dataclass(frozen=True)
class FamilyProfile:
    """One generative behaviour profile."""

    name: str
    is_fraud: bool
    weight: float
    novel: bool = False
    amount_mu: float = 3.4
    amount_sigma: float = 0.7
    balance_mu: float = 7.0
    balance_sigma: float = 0.8
    hours: tuple[int, ...] = tuple(range(8, 22))
    ops_per_user: float = 8.0
    txs_per_user: float = 7.0
    infra_share: float = 0.0
    divergence: float = 0.0
    user_mu_sigma: float = 0.4    # per-user offset on amount/balance mu
    infra_mix: tuple | None = None  # benign tiers (weight, lo, hi[, features])
    infra_features: tuple[str, ...] | None = None  # None = every infra pool


def default_families() -> tuple[FamilyProfile, ...]:
    return (
        FamilyProfile("benign_day", False, 0.06,
                      amount_mu=3.4, amount_sigma=0.7,
                      hours=tuple(range(9, 19)), ops_per_user=8, txs_per_user=7),
        FamilyProfile("benign_day2", False, 0.05,
                      amount_mu=2.9, amount_sigma=0.6, balance_mu=6.8,
                      hours=tuple(range(7, 16)), ops_per_user=9, txs_per_user=6),
        FamilyProfile("benign_day3", False, 0.05,
                      amount_mu=3.9, amount_sigma=0.7, balance_mu=7.2,
                      hours=tuple(range(11, 21)), ops_per_user=6, txs_per_user=8),
        FamilyProfile("benign_day4", False, 0.05,
                      amount_mu=3.2, amount_sigma=0.8, balance_mu=7.1,
                      hours=tuple(range(8, 14)), ops_per_user=7, txs_per_user=9),
        FamilyProfile("benign_evening", False, 0.05,
                      amount_mu=3.7, amount_sigma=0.6,
                      hours=tuple(range(17, 23)), ops_per_user=7, txs_per_user=6),
        FamilyProfile("benign_evening2", False, 0.04,
                      amount_mu=3.1, amount_sigma=0.7, balance_mu=6.9,
                      hours=tuple(range(16, 24)), ops_per_user=5, txs_per_user=9),
        FamilyProfile("benign_evening3", False, 0.04,
                      amount_mu=4.1, amount_sigma=0.6, balance_mu=7.3,
                      hours=tuple(range(18, 24)), ops_per_user=4, txs_per_user=7,
                      user_mu_sigma=0.3),
        FamilyProfile("benign_heavy", False, 0.04,
                      amount_mu=4.3, amount_sigma=0.8, balance_mu=7.5,
                      hours=tuple(range(10, 22)), ops_per_user=6, txs_per_user=9),
        FamilyProfile("benign_heavy2", False, 0.04,
                      amount_mu=4.7, amount_sigma=0.6, balance_mu=7.8,
                      hours=tuple(range(8, 18)), ops_per_user=4, txs_per_user=6,
                      user_mu_sigma=0.3),
        FamilyProfile("benign_micro", False, 0.04,
                      amount_mu=0.8, amount_sigma=0.6, balance_mu=6.3,
                      hours=tuple(range(8, 23)), ops_per_user=5, txs_per_user=10),
        FamilyProfile("benign_micro2", False, 0.04,
                      amount_mu=0.9, amount_sigma=0.7, balance_mu=6.4,
                      hours=tuple(range(15, 24)), ops_per_user=4, txs_per_user=12),
        FamilyProfile("benign_micro3", False, 0.03,
                      amount_mu=1.2, amount_sigma=0.6, balance_mu=6.5,
                      hours=tuple(range(7, 17)), ops_per_user=6, txs_per_user=8),
        FamilyProfile("benign_night", False, 0.06,
                      amount_mu=3.6, amount_sigma=0.6,
                      hours=(0, 1, 2, 3, 4, 5), ops_per_user=5, txs_per_user=7,
                      infra_mix=((0.84, 0.0, 0.04, None),
                                 (0.10, 0.55, 0.75, ("device", "ip")),
                                 (0.06, 0.55, 0.75, None))),
        FamilyProfile("benign_night2", False, 0.05,
                      amount_mu=2.7, amount_sigma=0.7, balance_mu=6.8,
                      hours=(23, 0, 1, 2, 3, 4), ops_per_user=6, txs_per_user=6,
                      infra_mix=((0.90, 0.0, 0.04, None),
                                 (0.10, 0.55, 0.75, ("os",)))),
        FamilyProfile("benign_night3", False, 0.03,
                      amount_mu=4.0, amount_sigma=0.6, balance_mu=7.1,
                      hours=(1, 2, 3, 4, 5, 6), ops_per_user=4, txs_per_user=8),
        FamilyProfile("benign_late", False, 0.04,
                      amount_mu=4.3, amount_sigma=0.7, balance_mu=7.5,
                      hours=(21, 22, 23, 0, 1, 2), ops_per_user=5, txs_per_user=8,
                      infra_mix=((0.88, 0.0, 0.04, None),
                                 (0.12, 0.55, 0.75, ("device", "ip")))),
        FamilyProfile("benign_late2", False, 0.02,
                      amount_mu=4.6, amount_sigma=0.6, balance_mu=7.7,
                      hours=(20, 21, 22, 23, 0, 1), ops_per_user=4, txs_per_user=7,
                      infra_mix=((0.84, 0.0, 0.04, None),
                                 (0.16, 0.55, 0.75, None))),
        FamilyProfile("benign_nightmicro", False, 0.05,
                      amount_mu=0.8, amount_sigma=0.7, balance_mu=6.2,
                      hours=(1, 2, 3, 4, 5, 6), ops_per_user=4, txs_per_user=12,
                      user_mu_sigma=0.25,
                      infra_mix=((0.85, 0.0, 0.04, None),
                                 (0.15, 0.55, 0.75, ("os",)))),
        FamilyProfile("benign_nightmicro2", False, 0.04,
                      amount_mu=0.7, amount_sigma=0.6, balance_mu=6.1,
                      hours=(0, 1, 2, 3, 4), ops_per_user=5, txs_per_user=10,
                      user_mu_sigma=0.3,
                      infra_mix=((0.88, 0.0, 0.04, None),
                                 (0.12, 0.55, 0.75, ("device", "ip")))),
        FamilyProfile("benign_day5", False, 0.04,
                      amount_mu=3.6, amount_sigma=0.6, balance_mu=6.9,
                      hours=tuple(range(10, 17)), ops_per_user=5, txs_per_user=5),
        FamilyProfile("benign_evening4", False, 0.03,
                      amount_mu=2.6, amount_sigma=0.7, balance_mu=6.6,
                      hours=tuple(range(15, 22)), ops_per_user=8, txs_per_user=8),
        FamilyProfile("benign_heavy3", False, 0.03,
                      amount_mu=5.0, amount_sigma=0.7, balance_mu=8.0,
                      hours=tuple(range(11, 20)), ops_per_user=5, txs_per_user=7),
        FamilyProfile("benign_micro4", False, 0.03,
                      amount_mu=1.0, amount_sigma=0.7, balance_mu=6.4,
                      hours=tuple(range(9, 21)), ops_per_user=7, txs_per_user=6),
        FamilyProfile("benign_spread", False, 0.05,
                      amount_mu=3.3, amount_sigma=0.9, balance_mu=7.0,
                      hours=tuple(range(6, 24)), ops_per_user=6, txs_per_user=7,
                      user_mu_sigma=0.5),
        FamilyProfile("fraud_card_test", True, 0.50,
                      amount_mu=0.7, amount_sigma=0.7, balance_mu=6.2,
                      hours=(0, 1, 2, 3, 4, 5), ops_per_user=4, txs_per_user=11,
                      infra_share=0.65, divergence=0.0, user_mu_sigma=0.4),
        FamilyProfile("fraud_launder", True, 0.40,
                      amount_mu=4.4, amount_sigma=0.7, balance_mu=7.6,
                      hours=(21, 22, 23, 0, 1, 2), ops_per_user=5, txs_per_user=8,
                      infra_share=0.65, divergence=0.0, user_mu_sigma=0.4),
        FamilyProfile("fraud_novel", True, 0.10, novel=True,
                      amount_mu=0.8, amount_sigma=0.7, balance_mu=6.2,
                      hours=(0, 1, 2, 3, 4, 5), ops_per_user=4, txs_per_user=11,
                      infra_share=0.85, divergence=0.0, user_mu_sigma=0.4,
                      infra_features=("device", "ip")),
    )


@dataclass
class SynthConfig:
    n_users: int = 5000
    fraud_ratio: float = 0.1378
    labeled_fraction: float = 0.10
    seed: int = 0
    families: tuple[FamilyProfile, ...] = field(default_factory=default_families)
    missing_operation: dict = field(default_factory=lambda: dict(DEFAULT_MISSING_OPERATION))
    missing_transaction: dict = field(default_factory=lambda: dict(DEFAULT_MISSING_TRANSACTION))
    start_date: str = "2024-01-01"
    n_days: int = 30

    def validate(self) -> None:
        if self.n_users <= 0:
            raise ConfigError("n_users must be positive")
        if not 0.0 < self.fraud_ratio < 1.0:
            raise ConfigError("fraud_ratio must lie in (0, 1)")
        if not 0.0 <= self.labeled_fraction <= 1.0:
            raise ConfigError("labeled_fraction must lie in [0, 1]")
        fraud = [f for f in self.families if f.is_fraud]
        benign = [f for f in self.families if not f.is_fraud]
        if not fraud or not benign:
            raise ConfigError("need at least one fraud and one benign family")
        n_fraud = int(round(self.fraud_ratio * self.n_users))
        if n_fraud < len(fraud):
            raise ConfigError(
                f"fraud_ratio*n_users={n_fraud} cannot cover {len(fraud)} fraud families")
        if self.n_users - n_fraud < len(benign):
            raise ConfigError(
                f"benign user count {self.n_users - n_fraud} cannot cover "
                f"{len(benign)} benign families")
        for rates, names in ((self.missing_operation, OPERATION_FIELDS),
                             (self.missing_transaction, TRANSACTION_FIELDS)):
            for feat, rate in rates.items():
                if feat not in names or feat == "user_id":
                    raise ConfigError(f"unknown missing-rate feature {feat!r}")
                if not 0.0 <= rate <= 1.0:
                    raise ConfigError(f"missing rate for {feat!r} must lie in [0, 1]")


@dataclass(frozen=True)
class TruthRow:
    user_id: str
    label: int
    family: str
    labeled: bool


@dataclass
class GroundTruth:
    rows: list[TruthRow]

    def __post_init__(self):
        self._by_user = {r.user_id: r for r in self.rows}

    def __len__(self) -> int:
        return len(self.rows)

    def lookup(self, user_id: str) -> TruthRow:
        return self._by_user[user_id]

    def labels_for(self, user_ids) -> np.ndarray:
        return np.array([self._by_user[u].label for u in user_ids], dtype=np.int64)

    def families_for(self, user_ids) -> list[str]:
        return [self._by_user[u].family for u in user_ids]

    def labeled_mask_for(self, user_ids) -> np.ndarray:
        return np.array([self._by_user[u].labeled for u in user_ids], dtype=bool)


@dataclass
class SynthResult:
    records: RecordSet
    truth: GroundTruth
    config: SynthConfig


def _largest_remainder_counts(total: int, weights: list[float]) -> list[int]:
    """Split `total` by weights, every share >= 1, remainders to largest."""
    w = np.asarray(weights, dtype=np.float64)
    w = w / w.sum()
    raw = w * total
    counts = np.maximum(np.floor(raw).astype(int), 1)
    while counts.sum() > total:
        counts[int(np.argmax(counts))] -= 1
    remainder = raw - counts
    while counts.sum() < total:
        nxt = int(np.argmax(remainder))
        counts[nxt] += 1
        remainder[nxt] = -1.0
    return counts.tolist()


def _category_pools(rng: np.random.Generator) -> tuple[dict, dict, dict]:
    """Common category names, base preferences and fraud infrastructure pools."""
    pools = {}
    base = {}
    for feat, size in POOL_SIZES.items():
        prefix = feat[:2]
        pools[feat] = [f"{prefix}{i:04d}" for i in range(size)]
        weights = 1.0 / np.arange(1, size + 1) ** 0.9
        mix = 0.6 * weights / weights.sum() + 0.4 * rng.dirichlet(np.full(size, 2.0))
        base[feat] = mix / mix.sum()
    infra = {
        feat: [f"fx{feat[:2]}{i:03d}" for i in range(size)]
        for feat, size in FRAUD_POOL_SIZES.items()
    }
    return pools, base, infra


def _family_prefs(families, pools, base, infra, rng):
    """Per family: common-pool preference per feature + infra preference."""
    prefs = {}
    for fam in families:
        per_feature = {}
        for feat, cats in pools.items():
            if fam.divergence > 0.0 and feat in ("device", "ip", "geo_code"):
                spiky = rng.dirichlet(np.full(len(cats), 0.15))
                p = (1.0 - fam.divergence) * base[feat] + fam.divergence * spiky
            else:
                p = base[feat]
            per_feature[feat] = p / p.sum()
        infra_pref = {
            feat: rng.dirichlet(np.full(len(cats), 0.8))
            for feat, cats in infra.items()
        }
        prefs[fam.name] = {"common": per_feature, "infra": infra_pref}
    return prefs


@dataclass
class _UserProfile:
    fam: FamilyProfile
    hours: tuple[int, ...]
    peak_prob: float
    amount_mu: float
    balance_mu: float
    infra_share: float
    personal: dict          # feature -> (category list, probs)
    personal_infra: dict    # feature -> (category list, probs)


def _personal_pool(cats, probs, size_range, rng):
    lo, hi = size_range
    size = min(int(rng.integers(lo, hi + 1)), len(cats))
    idx = rng.choice(len(cats), size=size, replace=False, p=probs)
    weights = rng.dirichlet(np.full(size, 1.5))
    return [cats[i] for i in idx], weights


def _build_profile(fam, prefs, pools, infra, rng) -> _UserProfile:
    # Personal contiguous hour window inside the family window.
    window = fam.hours
    length = max(3, int(rng.integers(max(3, len(window) - 2), len(window) + 1)))
    length = min(length, len(window))
    start = int(rng.integers(len(window)))
    hours = tuple(window[(start + i) % len(window)] for i in range(length))

    personal = {}
    for feat, size_range in PERSONAL_POOL_SPECS.items():
        personal[feat] = _personal_pool(
            pools[feat], prefs[fam.name]["common"][feat], size_range, rng)
    infra_feats = None
    if fam.is_fraud:
        infra_share = fam.infra_share * float(rng.uniform(0.65, 1.25))
    else:
        u = rng.random()
        acc = 0.0
        infra_share = 0.0
        for tier in (fam.infra_mix or BENIGN_INFRA_MIX):
            weight, lo, hi = tier[:3]
            acc += weight
            if u < acc:
                infra_share = float(rng.uniform(lo, hi))
                if len(tier) > 3 and tier[3] is not None:
                    infra_feats = tier[3]
                break
    if fam.is_fraud:
        # Shared tooling: the whole family pool, near-uniform per user.
        personal_infra = {
            feat: (list(infra[feat]),
                   rng.dirichlet(np.full(len(infra[feat]), 12.0)))
            for feat in infra
            if fam.infra_features is None or feat in fam.infra_features
        }
    else:
        personal_infra = {
            feat: _personal_pool(infra[feat], prefs[fam.name]["infra"][feat],
                                 PERSONAL_INFRA_SPECS[feat], rng)
            for feat in infra
            if infra_feats is None or feat in infra_feats
        }
    return _UserProfile(
        fam=fam,
        hours=hours,
        peak_prob=float(rng.uniform(0.75, 0.95)),
        amount_mu=fam.amount_mu + float(rng.normal(0.0, fam.user_mu_sigma)),
        balance_mu=fam.balance_mu + float(rng.normal(0.0, fam.user_mu_sigma)),
        infra_share=min(infra_share, 1.0),
        personal=personal,
        personal_infra=personal_infra,
    )


def _draw_cat(feat, profile, prefs, pools, infra, rng) -> str:
    """One categorical value from personal/family/infrastructure pools."""
    if (feat in profile.personal_infra and profile.infra_share > 0.0
            and rng.random() < profile.infra_share):
        cats, probs = profile.personal_infra[feat]
        return cats[int(rng.choice(len(probs), p=probs))]
    if feat in profile.personal and rng.random() < PERSONAL_LOYALTY:
        cats, probs = profile.personal[feat]
        return cats[int(rng.choice(len(probs), p=probs))]
    p = prefs[profile.fam.name]["common"][feat]
    return pools[feat][int(rng.choice(len(p), p=p))]


def _draw_time(profile: _UserProfile, start: datetime, n_days: int,
               rng: np.random.Generator) -> datetime:
    day = int(rng.integers(n_days))
    if rng.random() < profile.peak_prob:
        hour = int(profile.hours[int(rng.integers(len(profile.hours)))])
    else:
        hour = int(rng.integers(24))
    minute = int(rng.integers(60))
    second = int(rng.integers(60))
    return start + timedelta(days=day, hours=hour, minutes=minute, seconds=second)


def generate(cfg: SynthConfig) -> SynthResult:
    """Generate the corpus in memory; same config -> identical output."""
    cfg.validate()
    seq = np.random.SeedSequence(cfg.seed)
    pool_rng, assign_rng, profile_rng, record_rng, miss_rng, label_rng = (
        np.random.default_rng(c) for c in seq.spawn(6))

    pools, base, infra = _category_pools(pool_rng)
    prefs = _family_prefs(cfg.families, pools, base, infra, pool_rng)
    start = datetime.strptime(cfg.start_date + "T00:00:00", TIME_FORMAT)

    fraud_families = [f for f in cfg.families if f.is_fraud]
    benign_families = [f for f in cfg.families if not f.is_fraud]
    n_fraud = int(round(cfg.fraud_ratio * cfg.n_users))
    n_benign = cfg.n_users - n_fraud
    fraud_counts = _largest_remainder_counts(n_fraud, [f.weight for f in fraud_families])
    benign_counts = _largest_remainder_counts(n_benign, [f.weight for f in benign_families])

    slots: list[FamilyProfile] = []
    for fam, count in zip(fraud_families, fraud_counts):
        slots += [fam] * count
    for fam, count in zip(benign_families, benign_counts):
        slots += [fam] * count
    assign_rng.shuffle(slots)

    operations: list[OperationRecord] = []
    transactions: list[TransactionRecord] = []
    truth_rows: list[TruthRow] = []

    def _maybe_missing(feat: str, value, rates: dict):
        rate = rates.get(feat, 0.0)
        if rate > 0.0 and miss_rng.random() < rate:
            return None
        return value

    for i, fam in enumerate(slots):
        user_id = f"u{i:05d}"
        truth_rows.append(TruthRow(user_id, int(fam.is_fraud), fam.name, False))
        profile = _build_profile(fam, prefs, pools, infra, profile_rng)

        n_ops = max(1, int(record_rng.poisson(fam.ops_per_user)))
        for _ in range(n_ops):
            raw = {
                "mode": _draw_cat("mode", profile, prefs, pools, infra, record_rng),
                "time": _draw_time(profile, start, cfg.n_days, record_rng),
                "device": _draw_cat("device", profile, prefs, pools, infra, record_rng),
                "version": _draw_cat("version", profile, prefs, pools, infra, record_rng),
                "ip": _draw_cat("ip", profile, prefs, pools, infra, record_rng),
                "mac": _draw_cat("mac", profile, prefs, pools, infra, record_rng),
                "os": _draw_cat("os", profile, prefs, pools, infra, record_rng),
                "geo_code": _draw_cat("geo_code", profile, prefs, pools, infra, record_rng),
            }
            operations.append(OperationRecord(
                user_id=user_id,
                **{k: _maybe_missing(k, v, cfg.missing_operation)
                   for k, v in raw.items()},
            ))

        n_txs = int(record_rng.poisson(fam.txs_per_user))
        for _ in range(n_txs):
            amount = round(float(record_rng.lognormal(profile.amount_mu, fam.amount_sigma)), 2)
            balance = round(float(record_rng.lognormal(profile.balance_mu, fam.balance_sigma)), 2)
            raw = {
                "time": _draw_time(profile, start, cfg.n_days, record_rng),
                "device": _draw_cat("device", profile, prefs, pools, infra, record_rng),
                "tran_amt": amount,
                "ip": _draw_cat("ip", profile, prefs, pools, infra, record_rng),
                "channel": _draw_cat("channel", profile, prefs, pools, infra, record_rng),
                "acc_id": _draw_cat("acc_id", profile, prefs, pools, infra, record_rng),
                "balance": balance,
                "trans_type": _draw_cat("trans_type", profile, prefs, pools, infra, record_rng),
            }
            transactions.append(TransactionRecord(
                user_id=user_id,
                **{k: _maybe_missing(k, v, cfg.missing_transaction)
                   for k, v in raw.items()},
            ))

    # Training labels: stratified draw at labeled_fraction per class; novel
    # family users are never eligible.
    benign_ids = [r.user_id for r in truth_rows if r.label == 0]
    known_fraud_ids = [
        r.user_id for r in truth_rows
        if r.label == 1 and not _family_by_name(cfg.families, r.family).novel
    ]
    n_lab_benign = int(round(cfg.labeled_fraction * n_benign))
    n_lab_fraud = min(int(round(cfg.labeled_fraction * n_fraud)), len(known_fraud_ids))
    labeled_ids = set(label_rng.choice(benign_ids, size=n_lab_benign, replace=False))
    labeled_ids |= set(label_rng.choice(known_fraud_ids, size=n_lab_fraud, replace=False))
    truth_rows = [
        TruthRow(r.user_id, r.label, r.family, r.user_id in labeled_ids)
        for r in truth_rows
    ]

    operations.sort(key=lambda r: (r.time or datetime.min, r.user_id))
    transactions.sort(key=lambda r: (r.time or datetime.min, r.user_id))
    return SynthResult(
        records=RecordSet(operations, transactions),
        truth=GroundTruth(truth_rows),
        config=cfg,
    )


def _family_by_name(families, name: str) -> FamilyProfile:
    for fam in families:
        if fam.name == name:
            return fam
    raise ConfigError(f"unknown family {name!r}")


def config_to_dict(cfg: SynthConfig) -> dict:
    return asdict(cfg)
