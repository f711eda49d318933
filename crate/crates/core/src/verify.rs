//! Named verification suites, one per acceptance criterion.
//!
//! Expected values come from the homotopy-type tables written out here
//! directly, not from [`crate::transition::predict`], except where a
//! criterion is itself a comparison against the prediction.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homology::{frobenius_betti, local_betti_with, BettiVector, FieldSpec, HomologyOptions};
use crate::interval::IntervalPoset;
use crate::monoid::{Element, MonoidSpec, NumericalIso};
use crate::poincare::{
    base_presentation, default_box, preimage_box, pushforward, series_closed_form, series_computed,
    series_diff, BettiMode,
};
use crate::transition::{
    predicted_betti, tau, transition_map, transition_raw, verify_closure, ClosureOp,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    TwoTwoSphere,
    TwoGenReduction,
    Wedge,
    BaseTables,
    ThreeGenReduction,
    Free,
    Poincare,
    Laws,
    Suspension,
    FieldIndependence,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::TwoTwoSphere,
        Suite::TwoGenReduction,
        Suite::Wedge,
        Suite::BaseTables,
        Suite::ThreeGenReduction,
        Suite::Free,
        Suite::Poincare,
        Suite::Laws,
        Suite::Suspension,
        Suite::FieldIndependence,
    ];

    /// Position in the acceptance list, starting at 1.
    pub fn number(self) -> usize {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::TwoTwoSphere => "two-two-sphere",
            Suite::TwoGenReduction => "two-gen-reduction",
            Suite::Wedge => "wedge",
            Suite::BaseTables => "base-tables",
            Suite::ThreeGenReduction => "three-gen-reduction",
            Suite::Free => "free",
            Suite::Poincare => "poincare",
            Suite::Laws => "laws",
            Suite::Suspension => "suspension",
            Suite::FieldIndependence => "field-independence",
        }
    }

    pub fn run(self) -> Result<SuiteReport> {
        let mut ck = Checker::new(self);
        match self {
            Suite::TwoTwoSphere => two_two_sphere(&mut ck)?,
            Suite::TwoGenReduction => two_gen_reduction(&mut ck)?,
            Suite::Wedge => wedge(&mut ck)?,
            Suite::BaseTables => base_tables(&mut ck)?,
            Suite::ThreeGenReduction => three_gen_reduction(&mut ck)?,
            Suite::Free => free(&mut ck)?,
            Suite::Poincare => poincare(&mut ck)?,
            Suite::Laws => laws(&mut ck)?,
            Suite::Suspension => suspension(&mut ck)?,
            Suite::FieldIndependence => field_independence(&mut ck)?,
        }
        Ok(ck.finish())
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    /// Accepts the suite name or its number.
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s || suite.number().to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{verdict}] {}. {}: {} checks, {} failures",
            self.suite.number(),
            self.suite,
            self.checks,
            self.failures.len()
        )
    }
}

struct Checker {
    suite: Suite,
    checks: usize,
    failures: Vec<String>,
}

impl Checker {
    fn new(suite: Suite) -> Self {
        Checker {
            suite,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, what: impl fmt::Display, got: T, want: T) {
        self.checks += 1;
        if got != want {
            self.failures
                .push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }

    fn ok(&mut self, what: impl fmt::Display, cond: bool) {
        self.checks += 1;
        if !cond {
            self.failures.push(what.to_string());
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite,
            checks: self.checks,
            failures: self.failures,
        }
    }
}

fn sphere(d: i64) -> BettiVector {
    BettiVector::from_pairs(&[(d, 1)])
}

fn point() -> BettiVector {
    BettiVector::new()
}

fn nonzero_in_box(spec: MonoidSpec, bound: &[u64]) -> Result<Vec<Element>> {
    Ok(spec
        .normal_forms_in_box(bound)?
        .into_iter()
        .filter(|x| !x.is_zero())
        .collect())
}

/// Reduced Betti vectors of many Frobenius complexes, computed in parallel.
fn betti_all(lambdas: &[Element], field: FieldSpec) -> Result<Vec<BettiVector>> {
    let opts = HomologyOptions::with_field(field);
    lambdas
        .par_iter()
        .map(|l| frobenius_betti(l, &opts))
        .collect()
}

fn two_two_box() -> Result<Vec<Element>> {
    let s = MonoidSpec::two(2, 2)?;
    Ok(nonzero_in_box(s, &[1, 9])?
        .into_iter()
        .filter(|x| x.coords().iter().sum::<u64>() <= 9)
        .collect())
}

fn two_two_sphere(ck: &mut Checker) -> Result<()> {
    let lambdas = two_two_box()?;
    for (lam, got) in lambdas.iter().zip(betti_all(&lambdas, FieldSpec::Gf2)?) {
        let (m, n) = (lam.coords()[0], lam.coords()[1]);
        ck.eq(format!("F{lam}"), got, sphere(m as i64 + n as i64 - 2));
    }
    Ok(())
}

const TWO_GEN_PAIRS: [(u64, u64); 3] = [(2, 3), (3, 4), (3, 5)];

fn two_gen_reduction(ck: &mut Checker) -> Result<()> {
    let opts = HomologyOptions::default();
    for (p, q) in TWO_GEN_PAIRS {
        let spec = MonoidSpec::two(p, q)?;
        let lambdas = nonzero_in_box(spec, &[p - 1, 7])?;
        let computed: Vec<_> = lambdas
            .par_iter()
            .map(|l| local_betti_with(l, &opts, None))
            .collect::<Result<_>>()?;
        for (lam, got) in lambdas.iter().zip(computed) {
            let predicted = predicted_betti(lam)?;
            // fixed under T∘T exactly when m <= 1 and n mod q <= 1
            let (m, n) = (lam.coords()[0], lam.coords()[1]);
            let table = if m <= 1 && n % q <= 1 {
                sphere((m + 2 * (n / q) + n % q) as i64 - 2)
            } else {
                point()
            };
            ck.eq(
                format!("{spec} {lam} prediction vs residue table"),
                predicted.clone(),
                local_of(&table),
            );
            ck.eq(format!("{spec} {lam}"), got, predicted);
        }

        let iso = NumericalIso::new(p, q)?;
        let numerical = iso.codomain();
        for n in 1..=45u64 {
            let Ok(big) = numerical.element(&[n]) else {
                continue;
            };
            let small = iso.inverse(&big)?;
            let lhs = IntervalPoset::open(&big)?;
            let rhs = IntervalPoset::open(&small)?;
            let mapped: Vec<Element> = rhs
                .elements()
                .iter()
                .map(|x| iso.forward(x))
                .collect::<Result<_>>()?;
            // element lists are sorted differently on the two sides
            let index: Option<Vec<usize>> = mapped.iter().map(|x| lhs.index_of(x)).collect();
            let same = match index {
                Some(idx) if idx.len() == lhs.len() => {
                    let mut rels: Vec<[usize; 2]> = rhs
                        .relations()
                        .iter()
                        .map(|&[i, j]| [idx[i], idx[j]])
                        .collect();
                    rels.sort_unstable();
                    rels == lhs.relations()
                }
                _ => false,
            };
            ck.ok(
                format!("interval of {n} in {numerical} is not isomorphic to that of {small}"),
                same,
            );
            ck.eq(
                format!("{numerical} at {n}"),
                local_betti_with(&big, &opts, None)?,
                predicted_betti(&small)?,
            );
        }
    }
    Ok(())
}

fn local_of(reduced: &BettiVector) -> crate::homology::LocalBettiVector {
    crate::homology::LocalBettiVector::from_reduced(reduced)
}

fn wedge_box() -> Result<Vec<(Element, BettiVector)>> {
    let s = MonoidSpec::three(1, 1, 2)?;
    let mut out = Vec::new();
    for k in 1..=6u64 {
        let want = if k == 1 {
            sphere(-1)
        } else {
            BettiVector::from_pairs(&[(k as i64 - 2, 2)])
        };
        out.push((s.element(&[0, 0, k])?, want));
    }
    for k in 1..=6u64 {
        out.push((s.element(&[1, 0, k])?, sphere(k as i64 - 1)));
    }
    Ok(out)
}

fn wedge(ck: &mut Checker) -> Result<()> {
    let rows = wedge_box()?;
    let lambdas: Vec<Element> = rows.iter().map(|(l, _)| l.clone()).collect();
    for ((lam, want), got) in rows.iter().zip(betti_all(&lambdas, FieldSpec::Gf2)?) {
        ck.eq(format!("F{lam}"), got, want.clone());
    }
    Ok(())
}

fn base_table_box() -> Result<Vec<(Element, BettiVector)>> {
    let mut out = Vec::new();
    for spec in [MonoidSpec::three(1, 2, 2)?, MonoidSpec::three(2, 2, 2)?] {
        for lam in nonzero_in_box(spec, &[3, 3, 5])? {
            let [m, n, k] = [lam.coords()[0], lam.coords()[1], lam.coords()[2]];
            let want = if m <= 1 && n <= 1 {
                sphere((m + n + k) as i64 - 2)
            } else {
                point()
            };
            out.push((lam, want));
        }
    }
    Ok(out)
}

fn base_tables(ck: &mut Checker) -> Result<()> {
    let rows = base_table_box()?;
    let lambdas: Vec<Element> = rows.iter().map(|(l, _)| l.clone()).collect();
    for ((lam, want), got) in rows.iter().zip(betti_all(&lambdas, FieldSpec::Gf2)?) {
        ck.eq(format!("{} F{lam}", lam.spec()), got, want.clone());
    }
    Ok(())
}

fn three_gen_reduction(ck: &mut Checker) -> Result<()> {
    let opts = HomologyOptions::default();
    for spec in [MonoidSpec::three(2, 3, 4)?, MonoidSpec::three(1, 3, 2)?] {
        let lambdas = nonzero_in_box(spec, &[3, 4, 5])?;
        let computed: Vec<_> = lambdas
            .par_iter()
            .map(|l| local_betti_with(l, &opts, None))
            .collect::<Result<_>>()?;
        for (lam, got) in lambdas.iter().zip(computed) {
            ck.eq(format!("{spec} {lam}"), got, predicted_betti(lam)?);
        }
    }
    Ok(())
}

/// `F(m a + n b; N^2)`: the empty space at the atoms, `S^0` at `a + b`,
/// contractible otherwise.
fn free_table(m: u64, n: u64) -> BettiVector {
    match (m, n) {
        (1, 0) | (0, 1) => sphere(-1),
        (1, 1) => sphere(0),
        _ => point(),
    }
}

fn free(ck: &mut Checker) -> Result<()> {
    let spec = MonoidSpec::three(2, 3, 1)?;
    let lambdas = nonzero_in_box(spec, &[3, 3, 3])?;
    for (lam, got) in lambdas.iter().zip(betti_all(&lambdas, FieldSpec::Gf2)?) {
        let [m, n, k] = [lam.coords()[0], lam.coords()[1], lam.coords()[2]];
        ck.eq(
            format!("{spec} {lam}"),
            got,
            free_table(m + 2 * k, n + 3 * k),
        );
    }
    let plane = MonoidSpec::free(2)?;
    let lambdas = nonzero_in_box(plane, &[3, 3])?;
    for (lam, got) in lambdas.iter().zip(betti_all(&lambdas, FieldSpec::Gf2)?) {
        ck.eq(
            format!("{plane} {lam}"),
            got,
            free_table(lam.coords()[0], lam.coords()[1]),
        );
    }
    Ok(())
}

pub const POINCARE_SPECS: [(u64, u64, u64); 6] = [
    (2, 3, 1),
    (1, 1, 2),
    (1, 2, 2),
    (2, 2, 2),
    (2, 3, 3),
    (1, 3, 2),
];
pub const POINCARE_I_MAX: usize = 6;

fn poincare(ck: &mut Checker) -> Result<()> {
    for (p, q, r) in POINCARE_SPECS {
        let spec = MonoidSpec::three(p, q, r)?;
        let bound = default_box(spec, POINCARE_I_MAX);
        let computed = series_computed(
            spec,
            POINCARE_I_MAX,
            &bound,
            BettiMode::Homology(FieldSpec::Gf2),
        )?;
        let closed = series_closed_form(spec, POINCARE_I_MAX, &bound)?;
        ck.eq(
            format!("{spec} computed vs closed form"),
            series_diff(&computed, &closed)?,
            vec![],
        );
        ck.ok(
            format!("{spec} computed series differs from closed form"),
            computed == closed,
        );
        if r >= 2 {
            let base = base_presentation(spec)?;
            let base_box = preimage_box(base, spec, &bound)?;
            let pushed = pushforward(&series_closed_form(base, POINCARE_I_MAX, &base_box)?, spec)?;
            ck.eq(
                format!("{spec} pushforward collisions"),
                pushed.collisions.len(),
                0,
            );
            ck.ok(
                format!("{spec} pushforward region does not cover the computed box"),
                pushed
                    .series
                    .bound()
                    .iter()
                    .zip(&bound)
                    .all(|(a, b)| a >= b),
            );
            ck.eq(
                format!("{spec} computed vs pushforward from {base}"),
                series_diff(&computed, &pushed.series)?,
                vec![],
            );
        }
    }
    Ok(())
}

/// Violations of the transition-function laws for `p, q <= max_param` and
/// arguments `n <= max_arg`.
pub fn tau_law_violations(max_param: u64, max_arg: u64) -> Vec<String> {
    let mut bad = Vec::new();
    for p in 1..=max_param {
        for q in 1..=max_param {
            for n in 0..=max_arg {
                let t = tau(p, q, n);
                if tau(p, q, n + p) != t + q {
                    bad.push(format!("tau^{p}_{q}({n} + {p}) != tau({n}) + {q}"));
                }
                if tau(p, q, n + 1) < t {
                    bad.push(format!("tau^{p}_{q} decreases at {n}"));
                }
                let back = tau(q, p, t);
                if back > n || (p <= q && back != n) {
                    bad.push(format!("tau^{q}_{p} tau^{p}_{q}({n}) = {back}"));
                }
                let zero_reflecting = (p == 1 && q == 1) || (p >= 2 && q >= 2);
                if zero_reflecting && n > 0 && t == 0 {
                    bad.push(format!("tau^{p}_{q}({n}) = 0"));
                }
            }
        }
    }
    bad
}

fn map_laws(source: MonoidSpec, target: MonoidSpec, bound: u64) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let arity = source.arity();
    let mut all_raw = Vec::new();
    crate::monoid::for_each_tuple_below(&vec![bound; arity], |t| all_raw.push(t.to_vec()));
    for raw in &all_raw {
        let direct = transition_raw(source, target, raw)?;
        if transition_map(&source.element(raw)?, target)? != direct {
            bad.push(format!("T[{source}->{target}] not well-defined at {raw:?}"));
        }
    }
    let sp: Vec<u64> = params(source);
    let tp: Vec<u64> = params(target);
    let shrinks = sp.iter().zip(&tp).all(|(a, b)| a <= b);
    let reflects_zero = if arity == 2 {
        sp.iter().chain(&tp).all(|&x| x >= 2)
    } else {
        sp.iter()
            .zip(&tp)
            .all(|(&a, &b)| (a == 1 && b == 1) || (a >= 2 && b >= 2))
    };
    let gens = source.generators();
    for x in source.normal_forms_in_box(&vec![bound; arity])? {
        let tx = transition_map(&x, target)?;
        for g in &gens {
            if !tx.leq(&transition_map(&x.add(g)?, target)?)? {
                bad.push(format!("T[{source}->{target}] not monotone at {x} + {g}"));
            }
        }
        let back = transition_map(&tx, source)?;
        if !back.leq(&x)? || (shrinks && back != x) {
            bad.push(format!(
                "T[{target}->{source}] T[{source}->{target}]({x}) = {back}"
            ));
        }
        if reflects_zero && !x.is_zero() && tx.is_zero() {
            bad.push(format!("T[{source}->{target}]({x}) = 0"));
        }
    }
    Ok(bad)
}

fn params(spec: MonoidSpec) -> Vec<u64> {
    match spec {
        MonoidSpec::TwoGen { p, q } => vec![p, q],
        MonoidSpec::ThreeGen { p, q, r } => vec![p, q, r],
        _ => unreachable!("transition maps join two- or three-generator presentations"),
    }
}

/// Violations of the transition-map laws over all parameters `<= max_param`
/// on the box `[0, bound]^arity`, for two- and three-generator presentations.
pub fn transition_law_violations(max_param: u64, bound: u64) -> Result<Vec<String>> {
    let range = || 1..=max_param;
    let mut pairs = Vec::new();
    for (p, q, r, s) in range().flat_map(|p| {
        range().flat_map(move |q| range().flat_map(move |r| range().map(move |s| (p, q, r, s))))
    }) {
        pairs.push((MonoidSpec::two(p, q)?, MonoidSpec::two(r, s)?));
    }
    for (p, q, r) in
        range().flat_map(|p| range().flat_map(move |q| range().map(move |r| (p, q, r))))
    {
        for (s, t, u) in
            range().flat_map(|s| range().flat_map(move |t| range().map(move |u| (s, t, u))))
        {
            pairs.push((MonoidSpec::three(p, q, r)?, MonoidSpec::three(s, t, u)?));
        }
    }
    let found: Vec<Vec<String>> = pairs
        .par_iter()
        .map(|&(a, b)| map_laws(a, b, bound))
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Every closure operator the reductions rely on.
pub fn closure_ops_in_use() -> Result<Vec<ClosureOp>> {
    let mut ops = vec![
        ClosureOp::F112,
        ClosureOp::G122,
        ClosureOp::H222,
        ClosureOp::FreeClamp { dim: 2 },
    ];
    let via22 = MonoidSpec::two(2, 2)?;
    for (p, q) in TWO_GEN_PAIRS {
        ops.push(ClosureOp::ComposedT {
            source: MonoidSpec::two(p, q)?,
            via: via22,
        });
    }
    for (p, q, r) in [
        (2, 3, 4),
        (1, 3, 2),
        (2, 3, 3),
        (1, 1, 2),
        (1, 2, 2),
        (2, 2, 2),
    ] {
        let source = MonoidSpec::three(p, q, r)?;
        ops.push(ClosureOp::ComposedT {
            source,
            via: base_presentation(source)?,
        });
    }
    Ok(ops)
}

pub const LAW_MAX_PARAM: u64 = 5;
pub const LAW_MAX_ARG: u64 = 200;
pub const LAW_BOX: u64 = 10;

fn laws(ck: &mut Checker) -> Result<()> {
    ck.eq(
        "transition function laws",
        tau_law_violations(LAW_MAX_PARAM, LAW_MAX_ARG),
        vec![],
    );
    ck.eq(
        "transition map laws",
        transition_law_violations(LAW_MAX_PARAM, LAW_BOX)?,
        vec![],
    );
    let ops = closure_ops_in_use()?;
    let reports: Vec<_> = ops
        .par_iter()
        .map(|&op| verify_closure(op, LAW_BOX))
        .collect::<Result<_>>()?;
    for r in reports {
        ck.eq(
            format!("closure hypotheses for {}", r.op),
            r.counterexample,
            None,
        );
    }
    Ok(())
}

fn suspension(ck: &mut Checker) -> Result<()> {
    let opts = HomologyOptions::default();
    let s22 = MonoidSpec::two(2, 2)?;
    let a = &s22.generators()[0];
    for lam in two_two_box()? {
        let (m, n) = (lam.coords()[0], lam.coords()[1]);
        if m >= 1 && m + n >= 2 {
            let below = lam.subtract(a).expect("a divides lambda");
            ck.eq(
                format!("F{lam} vs suspension of F{below}"),
                frobenius_betti(&lam, &opts)?,
                frobenius_betti(&below, &opts)?.suspended(),
            );
        }
    }
    let mut lambdas: Vec<Element> = wedge_box()?.into_iter().map(|(l, _)| l).collect();
    lambdas.extend(base_table_box()?.into_iter().map(|(l, _)| l));
    for lam in lambdas {
        let spec = lam.spec();
        let gens = spec.generators();
        let c = &gens[2];
        let ab = gens[0].add(&gens[1])?;
        if c.lt(&lam)? && ab.lt(&lam)? {
            let below = lam.subtract(c).expect("c divides lambda");
            ck.eq(
                format!("{spec} F{lam} vs suspension of F{below}"),
                frobenius_betti(&lam, &opts)?,
                frobenius_betti(&below, &opts)?.suspended(),
            );
        }
    }
    Ok(())
}

fn field_independence(ck: &mut Checker) -> Result<()> {
    let mut lambdas = two_two_box()?;
    lambdas.extend(wedge_box()?.into_iter().map(|(l, _)| l));
    lambdas.extend(base_table_box()?.into_iter().map(|(l, _)| l));
    let gf2 = betti_all(&lambdas, FieldSpec::Gf2)?;
    for field in [FieldSpec::Prime(3), FieldSpec::Rational] {
        for ((lam, want), got) in lambdas.iter().zip(&gf2).zip(betti_all(&lambdas, field)?) {
            ck.eq(
                format!("{} F{lam} over {field}", lam.spec()),
                got,
                want.clone(),
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(s.number().to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("eleven".parse::<Suite>().is_err());
        assert_eq!(Suite::Laws.number(), 8);
    }

    #[test]
    fn tau_laws_hold_and_detect_breakage() {
        assert!(tau_law_violations(5, 60).is_empty());
        // τ^2_1 sends 1 to 0, which is exactly why that case is excluded
        assert_eq!(tau(2, 1, 1), 0);
    }

    #[test]
    fn small_suites_pass() {
        for s in [Suite::Wedge, Suite::Free] {
            let r = s.run().unwrap();
            assert!(r.passed(), "{r}: {:?}", r.failures);
            assert!(r.checks > 0);
        }
    }

    #[test]
    fn report_line() {
        let r = SuiteReport {
            suite: Suite::Wedge,
            checks: 12,
            failures: vec![],
        };
        assert_eq!(r.to_string(), "[PASS] 3. wedge: 12 checks, 0 failures");
    }
}
