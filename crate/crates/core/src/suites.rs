//! Invariant suites for the whole library, reported check by check.
//!
//! Each [`Check`] counts the instances it examined and the violations it
//! found. The exhaustive parts run over a [`Truncation`] of `L`; the
//! randomized parts draw from a seeded generator, so a report is reproducible
//! from its [`SuiteConfig`].

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::domain::{
    approximant, chain_sup, claim1_check, claim2_check, compact_by_chain, directed_restriction_check, has_upper_bound,
    min_upper_generators, refute_chain_upper_bound, ChainBound, IndexSet, LElem, Part, Target, Truncation,
};
use crate::poset::{labelled_posets, posets_up_to_iso, SupOutcome, TwinChains, TwinElem, TwinOrder, TwinSubset};
use crate::seq::{ExtNat, Seq};

const MAX_EXAMPLES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Seq,
    L,
    Finite,
    All,
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "seq" => Ok(Scope::Seq),
            "L" | "l" => Ok(Scope::L),
            "finite" => Ok(Scope::Finite),
            "all" => Ok(Scope::All),
            _ => Err(format!("unknown suite scope {s:?} (expected seq, L, finite or all)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Exhaustive slice of `L`.
    pub truncation: Truncation,
    /// Slice from which random directed sets are drawn.
    pub random_truncation: Truncation,
    /// Random instances per randomized check.
    pub random_cases: u64,
    /// Entry and length bounds for random sequences.
    pub random_entries: u64,
    pub random_len: u64,
    pub seed: u64,
    /// Largest finite posets enumerated.
    pub max_elems: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            truncation: Truncation::EXHAUSTIVE,
            random_truncation: Truncation::RANDOMIZED,
            random_cases: 10_000,
            random_entries: 50,
            random_len: 8,
            seed: 0,
            max_elems: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub label: String,
    pub property: String,
    pub checked: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<String>,
}

impl Check {
    fn new(label: &str, property: &str) -> Check {
        Check {
            label: label.into(),
            property: property.into(),
            checked: 0,
            violations: 0,
            examples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, example: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(example());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub scope: Scope,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, label: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.label == label)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.label.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            writeln!(
                f,
                "{:width$}  {status}  {:>9} checked  {:>3} violations  {}",
                c.label, c.checked, c.violations, c.property
            )?;
            for e in &c.examples {
                writeln!(f, "{:width$}        e.g. {e}", "")?;
            }
        }
        Ok(())
    }
}

pub fn run(scope: Scope, config: &SuiteConfig) -> SuiteReport {
    let checks = match scope {
        Scope::Seq => seq_checks(config),
        Scope::L => l_checks(config),
        Scope::Finite => finite_checks(config),
        Scope::All => {
            let mut all = seq_checks(config);
            all.extend(l_checks(config));
            all.extend(finite_checks(config));
            all
        }
    };
    SuiteReport { scope, checks }
}

/// A random sequence with entries `≤ max_entry`: finite of length
/// `≤ max_len`, or eventually periodic with preamble shorter than `max_len`
/// and a period of length at most 3.
pub fn random_seq(rng: &mut impl Rng, max_entry: u64, max_len: u64, infinite: bool) -> Seq {
    let max_len = max_len.max(1);
    let (pre_len, per_len) = if infinite {
        (rng.gen_range(0..max_len), rng.gen_range(1..=3))
    } else {
        (rng.gen_range(1..=max_len), 0)
    };
    let pre: Vec<u64> = (0..pre_len).map(|_| rng.gen_range(1..=max_entry)).collect();
    if infinite {
        let per: Vec<u64> = (0..per_len).map(|_| rng.gen_range(1..=max_entry)).collect();
        Seq::periodic(pre, per).unwrap()
    } else {
        Seq::finite(pre).unwrap()
    }
}

fn random_extension(rng: &mut impl Rng, a: &Seq, max_entry: u64) -> Seq {
    let Some(v) = a.as_finite() else {
        return a.clone();
    };
    let mut v = v.to_vec();
    let extra = rng.gen_range(0..=3);
    v.extend((0..extra).map(|_| rng.gen_range(1..=max_entry)));
    if rng.gen_bool(0.25) {
        Seq::periodic(v, vec![rng.gen_range(1..=max_entry)]).unwrap()
    } else {
        Seq::finite(v).unwrap()
    }
}

/// Infinite sequences that extend short finite ones, so they interact with a
/// truncation in the order.
fn infinite_samples(t: Truncation) -> Vec<Seq> {
    let mut out: Vec<Seq> = Vec::new();
    let stems = Truncation::new(t.bound, t.depth.min(2)).sequences();
    for stem in std::iter::once(Vec::new()).chain(stems.iter().map(|s| s.as_finite().unwrap().to_vec())) {
        for period in [vec![1], vec![2, 1], vec![t.bound]] {
            let s = Seq::periodic(stem.clone(), period).unwrap();
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

/// Prefixes up to this length decide equality between the sampled sequences.
const HORIZON: u64 = 24;

fn order_matrix<T>(items: &[T], leq: impl Fn(&T, &T) -> bool) -> Vec<Vec<bool>> {
    items
        .iter()
        .map(|a| items.iter().map(|b| leq(a, b)).collect())
        .collect()
}

fn partial_order_checks<T: fmt::Display>(check: &mut Check, items: &[T], le: &[Vec<bool>], triples_upto: usize) {
    let n = items.len();
    for i in 0..n {
        check.record(le[i][i], || format!("not reflexive at {}", items[i]));
    }
    for i in 0..n {
        for j in i + 1..n {
            check.record(!(le[i][j] && le[j][i]), || {
                format!("antisymmetry fails for {} and {}", items[i], items[j])
            });
        }
    }
    for i in 0..triples_upto {
        for j in 0..triples_upto {
            for k in 0..triples_upto {
                check.record(!(le[i][j] && le[j][k]) || le[i][k], || {
                    format!("transitivity fails for {}, {}, {}", items[i], items[j], items[k])
                });
            }
        }
    }
}

fn seq_checks(config: &SuiteConfig) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let small = Truncation::new(3, 3);
    let finite = small.sequences();
    let infinite = infinite_samples(small);
    let sample: Vec<Seq> = finite.iter().chain(&infinite).cloned().collect();
    let le = order_matrix(&sample, Seq::leq);

    let mut order = Check::new("Prefix order", "reflexive, antisymmetric and transitive");
    partial_order_checks(&mut order, &sample, &le, sample.len());
    for _ in 0..config.random_cases {
        let a = random_seq(&mut rng, 8, 6, false);
        let b = random_extension(&mut rng, &a, 8);
        let c = random_extension(&mut rng, &b, 8);
        order.record(a.leq(&b) && b.leq(&c) && a.leq(&c), || format!("chain {a} {b} {c}"));
        order.record(!(b.leq(&a) && a != b), || format!("antisymmetry {a} {b}"));
    }

    let mut sups = Check::new("Remark 1.2(1)", "an infinite sequence is the supremum of its prefixes");
    for a in &infinite {
        for k in 1..=HORIZON {
            sups.record(a.prefix(k).unwrap().leq(a), || format!("prefix {k} of {a}"));
        }
        for b in &sample {
            let bounds_all = (1..=HORIZON).all(|k| a.prefix(k).unwrap().leq(b));
            sups.record(!bounds_all || a.leq(b), || format!("{b} bounds every prefix of {a}"));
        }
    }

    let mut components = Check::new("Remark 1.2(2)", "comparable sequences share their first entry");
    for (i, a) in sample.iter().enumerate() {
        for (j, b) in sample.iter().enumerate() {
            if le[i][j] {
                components.record(a.component() == b.component(), || format!("{a} <= {b}"));
            }
        }
    }

    let mut compact = Check::new("Remark 1.2(3)", "finite sequences are exactly the compact ones");
    for a in &sample {
        for b in &infinite {
            if a.leq(b) {
                let reached = (1..=HORIZON).any(|k| a.leq(&b.prefix(k).unwrap()));
                compact.record(reached == a.is_finite(), || format!("{a} along the prefixes of {b}"));
            }
        }
    }

    let mut bounds = Check::new("Remark 1.2(4)", "two sequences have an upper bound iff comparable");
    let candidates: Vec<Seq> = Truncation::new(3, 5)
        .sequences()
        .into_iter()
        .chain(infinite.clone())
        .collect();
    for a in &sample {
        for b in &sample {
            let brute = candidates.iter().any(|c| a.leq(c) && b.leq(c));
            let decided = a.has_upper_bound(b);
            bounds.record(brute == decided && decided == a.comparable(b), || {
                format!("{a} and {b}")
            });
        }
    }

    vec![order, sups, components, compact, bounds]
}

fn random_index_sets() -> Vec<IndexSet> {
    vec![
        IndexSet::Naturals,
        IndexSet::evens(),
        IndexSet::Arithmetic { start: 3, step: 5 },
        IndexSet::Arithmetic { start: 1, step: 7 },
        IndexSet::Arithmetic { start: 100, step: 1 },
        IndexSet::Primes,
        IndexSet::Squares,
        IndexSet::Powers { base: 2 },
        IndexSet::Powers { base: 3 },
        IndexSet::Arithmetic { start: 50, step: 50 },
    ]
}

/// Random element strictly below or equal to a sequence element `g`.
fn random_below(rng: &mut impl Rng, g: &LElem) -> LElem {
    let a = g.payload().expect("sequence element");
    let len = a.len().finite().unwrap_or(8);
    let k = rng.gen_range(1..=len);
    match rng.gen_range(0..3) {
        0 => LElem::x(k, rng.gen_range(1..=a.entry(k).unwrap())),
        1 => LElem::Sigma(a.prefix(k).unwrap()),
        _ if g.part() == Part::Star => LElem::Star(a.prefix(k).unwrap()),
        _ => LElem::Sigma(a.prefix(k).unwrap()),
    }
}

fn l_checks(config: &SuiteConfig) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x4c);
    let t = config.truncation;
    let core = t.elements();
    let seqs = t.sequences();
    let infinite = infinite_samples(t);
    let mut universe = core.clone();
    for s in &infinite {
        universe.push(LElem::Sigma(s.clone()));
        universe.push(LElem::Star(s.clone()));
    }
    let le = order_matrix(&universe, LElem::leq);
    let horizon = HORIZON.max(t.bound.max(t.depth) + 4);
    let (re, rl) = (config.random_entries, config.random_len);

    let mut order = Check::new("Order", "the order of L is a partial order");
    partial_order_checks(&mut order, &universe, &le, core.len());

    let all_seqs: Vec<Seq> = seqs.iter().chain(&infinite).cloned().collect();
    let mut claim1 = Check::new("Claim 1", "x(k,m) <= a iff x(k,m) <= a*");
    for k in 1..=t.bound + 1 {
        for m in 1..=t.bound + 1 {
            for a in &all_seqs {
                claim1.record(claim1_check(k, m, a), || format!("k={k} m={m} a={a}"));
            }
        }
    }
    for _ in 0..config.random_cases {
        let (k, m) = (rng.gen_range(1..=rl + 1), rng.gen_range(1..=re + 1));
        let inf = rng.gen_bool(0.5);
        let a = random_seq(&mut rng, re, rl, inf);
        claim1.record(claim1_check(k, m, &a), || format!("k={k} m={m} a={a}"));
    }

    let mut claim2 = Check::new("Claim 2", "a <= b*, a* <= b* and a <= b agree as prefix order");
    for a in &all_seqs {
        for b in &all_seqs {
            claim2.record(claim2_check(a, b), || format!("a={a} b={b}"));
        }
    }
    for _ in 0..config.random_cases {
        let inf = rng.gen_bool(0.3);
        let a = random_seq(&mut rng, re, rl, inf);
        let b = if rng.gen_bool(0.5) {
            random_extension(&mut rng, &a, re)
        } else {
            let inf = rng.gen_bool(0.3);
            random_seq(&mut rng, re, rl, inf)
        };
        claim2.record(claim2_check(&a, &b) && claim2_check(&b, &a), || format!("a={a} b={b}"));
    }

    let mut claim3 = Check::new("Claim 3", "no sequence bounds an infinite chain in a column");
    for i in 0..100 {
        let inf = i % 2 == 1;
        let a = random_seq(&mut rng, re, rl, inf);
        let a = if rng.gen_bool(0.5) {
            LElem::Sigma(a)
        } else {
            LElem::Star(a)
        };
        let m = rng.gen_range(1..=rl);
        for ns in random_index_sets() {
            let refuted = match refute_chain_upper_bound(m, &ns, &a) {
                Ok(ChainBound::Refuted { n }) => ns.contains(n) && !LElem::x(m, n).leq(&a),
                _ => false,
            };
            claim3.record(refuted, || format!("m={m} ns={ns} a={a}"));
        }
    }
    for m in 1..=5 {
        for ns in random_index_sets() {
            claim3.record(chain_sup(m, &ns) == Ok(LElem::x_top(m)), || {
                format!("sup of column {m} over {ns}")
            });
        }
    }

    let mut claim4 = Check::new(
        "Claim 4",
        "X, Sigma and Sigma* are closed under sups of canonical chains",
    );
    for (i, u) in universe.iter().enumerate() {
        let chain: Vec<LElem> = (1..=horizon).map(|j| approximant(u, j)).collect();
        let inside = chain.iter().all(|c| c.part() == u.part() && c.leq(u));
        let least = universe
            .iter()
            .enumerate()
            .filter(|(_, v)| chain.iter().all(|c| c.leq(v)))
            .all(|(j, _)| le[i][j]);
        claim4.record(inside && least, || format!("canonical chain of {u}"));
    }

    let mut claim5 = Check::new("Claim 5", "directed sets with sup in Sigma* have cofinal Sigma* part");
    let mut claim6 = Check::new("Claim 6", "directed sets with sup in Sigma have cofinal Sigma part");
    for u in &universe {
        for v in &universe {
            // Sigma* is an upper set, equivalently X and Sigma together form a lower set.
            if u.leq(v) {
                let ok = u.part() != Part::Star || v.part() == Part::Star;
                claim5.record(ok, || format!("{u} <= {v} leaves Sigma*"));
            }
        }
    }
    let n = core.len();
    for g in 0..n {
        let target = match core[g].part() {
            Part::Star => Target::Star,
            Part::Sigma => Target::Sigma,
            Part::X => continue,
        };
        let below: Vec<usize> = (0..n).filter(|&i| i != g && le[i][g]).collect();
        let mut sets: Vec<Vec<usize>> = vec![vec![g]];
        for (x, &i) in below.iter().enumerate() {
            sets.push(vec![g, i]);
            for &j in &below[x + 1..] {
                sets.push(vec![g, i, j]);
            }
        }
        let check = if target == Target::Star {
            &mut claim5
        } else {
            &mut claim6
        };
        for d in sets {
            let d: Vec<LElem> = d.into_iter().map(|i| core[i].clone()).collect();
            check.record(directed_restriction_check(&d, target) == Ok(true), || format!("{d:?}"));
        }
    }
    let rt = config.random_truncation;
    for _ in 0..config.random_cases / 10 {
        let a = random_seq(&mut rng, rt.bound, rt.depth, false);
        let star = rng.gen_bool(0.5);
        let g = if star { LElem::Star(a) } else { LElem::Sigma(a) };
        let mut d = vec![g.clone()];
        for _ in 0..3 {
            d.push(random_below(&mut rng, &g));
        }
        let (target, check) = if star {
            (Target::Star, &mut claim5)
        } else {
            (Target::Sigma, &mut claim6)
        };
        check.record(directed_restriction_check(&d, target) == Ok(true), || format!("{d:?}"));
    }

    let mut steps = [
        Check::new("Step 1", "finite starred sequences are compact along canonical chains"),
        Check::new("Step 2", "finite plain sequences are compact along canonical chains"),
        Check::new("Step 3", "finite column points are compact along canonical chains"),
    ];
    for c in core.iter().filter(|c| c.is_compact()) {
        let step = match c.part() {
            Part::Star => 0,
            Part::Sigma => 1,
            Part::X => 2,
        };
        for u in universe.iter().filter(|u| c.leq(u)) {
            let reached = (1..=horizon).any(|j| c.leq(&approximant(u, j)));
            steps[step].record(reached, || format!("{c} below {u}"));
        }
    }

    let mut compactness = Check::new("Compactness", "closed form agrees with the canonical-chain oracle");
    let mut samples = universe.clone();
    for _ in 0..50 {
        let a = random_seq(&mut rng, re, rl, true);
        samples.push(if rng.gen_bool(0.5) {
            LElem::Sigma(a)
        } else {
            LElem::Star(a)
        });
    }
    for u in &samples {
        compactness.record(u.is_compact() == compact_by_chain(u, horizon), || u.to_string());
    }

    let mut maximal = Check::new(
        "Maximality",
        "maximal elements are column tops and infinite starred sequences",
    );
    for (i, u) in universe.iter().enumerate() {
        let above_in_sample = universe.iter().enumerate().any(|(j, _)| j != i && le[i][j]);
        let escape = match u {
            LElem::X(ix) => ix.n.finite().map(|n| LElem::x(ix.m, n + 1)),
            LElem::Sigma(a) => Some(LElem::Star(a.clone())),
            LElem::Star(a) => a.extended(&[1]).filter(|_| a.is_finite()).map(LElem::Star),
        };
        let ok = if u.is_maximal() {
            !above_in_sample && escape.is_none()
        } else {
            escape.is_some_and(|v| u.leq(&v) && v != *u)
        };
        maximal.record(ok, || u.to_string());
    }

    let mut antichains = Check::new(
        "Antichains",
        "minimal sequences above a column point have no common bound",
    );
    for k in 1..=2 {
        for m in 1..=3 {
            let gens = min_upper_generators(k, m).expect("positive parameters").enumerate(3);
            for (i, a) in gens.iter().enumerate() {
                for b in &gens[i + 1..] {
                    let (a, b) = (LElem::Sigma(a.clone()), LElem::Sigma(b.clone()));
                    let brute = universe.iter().any(|c| a.leq(c) && b.leq(c));
                    antichains.record(!brute && !has_upper_bound(&a, &b), || format!("{a} and {b}"));
                }
            }
        }
    }

    let mut out = vec![order, claim1, claim2, claim3, claim4, claim5, claim6];
    out.extend(steps);
    out.extend([compactness, maximal, antichains]);
    out
}

fn finite_checks(config: &SuiteConfig) -> Vec<Check> {
    let mut enumeration = Check::new("Enumeration", "posets per size, labelled and up to isomorphism");
    let labelled_counts = [1usize, 1, 3, 19, 219, 4231];
    let iso_counts = [1usize, 1, 2, 5, 16, 63];
    let mut way = Check::new("Way-below", "x << y iff x <= y");
    let mut opens = Check::new("Scott opens", "Scott open iff upper set");
    let mut gdelta = Check::new("G-delta", "G-delta iff Scott open");
    let mut max = Check::new("Max is G-delta", "Max is G-delta in every finite poset");
    for n in 0..=config.max_elems {
        let posets = labelled_posets(n);
        if let Some(&c) = labelled_counts.get(n) {
            enumeration.record(posets.len() == c, || {
                format!("{} labelled posets on {n} points", posets.len())
            });
        }
        if let Some(&c) = iso_counts.get(n) {
            let iso = posets_up_to_iso(n).len();
            enumeration.record(iso == c, || format!("{iso} classes on {n} points"));
        }
        for p in &posets {
            for x in 0..n {
                for y in 0..n {
                    way.record(p.way_below(x, y) == p.leq(x, y), || {
                        format!("{x} {y} in {:?}", p.to_relation())
                    });
                }
            }
            for mask in 0u64..1 << n {
                let set = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let open = p.is_scott_open(&set);
                opens.record(open == p.is_upper_set(&set), || {
                    format!("{set:?} in {:?}", p.to_relation())
                });
                gdelta.record(p.is_gdelta(&set) == open, || {
                    format!("{set:?} in {:?}", p.to_relation())
                });
            }
            max.record(p.is_gdelta(&p.maximals()), || format!("{:?}", p.to_relation()));
        }
    }

    let mut twin = Check::new("Remark 2.4", "extending an order can create a missing supremum");
    let split = TwinChains::new(TwinOrder::Split);
    let joined = TwinChains::new(TwinOrder::Joined);
    twin.record(
        split.sup(&TwinSubset::XChain) == SupOutcome::NoLeast(TwinElem::x_top(), TwinElem::y_top()),
        || "chain has a sup under the split order".into(),
    );
    twin.record(
        joined.sup(&TwinSubset::XChain) == SupOutcome::Sup(TwinElem::x_top()),
        || "chain sup is not the top under the joined order".into(),
    );
    let idx: Vec<ExtNat> = (1..=10).map(ExtNat::Fin).chain([ExtNat::Omega]).collect();
    let elems: Vec<TwinElem> = idx.iter().flat_map(|&i| [TwinElem::X(i), TwinElem::Y(i)]).collect();
    for &a in &elems {
        for &b in &elems {
            let expect_diff = (a, b) == (TwinElem::x_top(), TwinElem::y_top());
            twin.record((split.leq(a, b) != joined.leq(a, b)) == expect_diff, || {
                format!("{a} {b}")
            });
        }
    }

    vec![enumeration, way, opens, gdelta, max, twin]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            truncation: Truncation::new(2, 2),
            random_cases: 200,
            max_elems: 3,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn all_scopes_pass_on_a_small_configuration() {
        let report = run(Scope::All, &small());
        assert!(report.passed(), "{report}");
        assert!(report.check("Claim 5").unwrap().checked > 0);
        assert!(report.check("Claim 6").unwrap().checked > 0);
        assert!(report.check("Step 3").unwrap().checked > 0);
    }

    #[test]
    fn reports_are_reproducible() {
        assert_eq!(run(Scope::L, &small()), run(Scope::L, &small()));
    }

    #[test]
    fn scope_parsing() {
        assert_eq!("L".parse(), Ok(Scope::L));
        assert!("nope".parse::<Scope>().is_err());
    }

    #[test]
    fn random_sequences_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..500 {
            let a = random_seq(&mut rng, 5, 4, i % 2 == 0);
            assert_eq!(a.is_infinite(), i % 2 == 0);
            assert!(a.max_entry() <= 5);
            if let ExtNat::Fin(l) = a.len() {
                assert!((1..=4).contains(&l));
            }
        }
    }
}
