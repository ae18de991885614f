//! Scoring rules over a finite outcome set: construction from convex
//! functions, extended expected scores, and properness checks on grids.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::convex::{ConvexSpec, DomainHint};
use crate::error::{Error, Result};
use crate::extreal::{self, ExtReal, Rational};
use crate::geometry::RatVec;
use crate::linext::LinExt;
use crate::precision;

/// Ordered, distinct outcome labels. The order fixes coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct OutcomeSet {
    labels: Vec<String>,
}

impl OutcomeSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidOutcomes("no outcomes".into()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidOutcomes(format!("duplicate label {l:?}")));
            }
        }
        Ok(OutcomeSet { labels })
    }

    /// Labels `"0"`, …, `"n−1"`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

impl TryFrom<Vec<String>> for OutcomeSet {
    type Error = Error;

    fn try_from(labels: Vec<String>) -> Result<Self> {
        OutcomeSet::new(labels)
    }
}

impl From<OutcomeSet> for Vec<String> {
    fn from(o: OutcomeSet) -> Self {
        o.labels
    }
}

/// A probability vector: nonnegative coordinates summing to exactly 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RatVec", into = "RatVec")]
pub struct Dist(RatVec);

impl Dist {
    pub fn new(probs: RatVec) -> Result<Self> {
        if probs.dim() == 0 {
            return Err(Error::InvalidDist("empty vector".into()));
        }
        if probs.coords().iter().any(|c| c.is_negative()) {
            return Err(Error::InvalidDist(format!("{probs} has a negative coordinate")));
        }
        if !probs.sum().is_one() {
            return Err(Error::InvalidDist(format!("{probs} does not sum to 1")));
        }
        Ok(Dist(probs))
    }

    pub fn probs(&self) -> &RatVec {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn prob(&self, y: usize) -> &Rational {
        &self.0[y]
    }

    /// Indices `y` with `p(y) > 0`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&y| self.0[y].is_positive()).collect()
    }

    pub fn is_vertex(&self) -> bool {
        self.support().len() == 1
    }
}

impl TryFrom<RatVec> for Dist {
    type Error = Error;

    fn try_from(v: RatVec) -> Result<Self> {
        Dist::new(v)
    }
}

impl From<Dist> for RatVec {
    fn from(d: Dist) -> Self {
        d.0
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn delta(label: &str, outcomes: &OutcomeSet) -> Result<Dist> {
    let y = outcomes.index_of(label)?;
    Ok(Dist(RatVec::unit(outcomes.len(), y)))
}

fn vertex(n: usize, y: usize) -> RatVec {
    RatVec::unit(n, y)
}

pub fn dists(points: Vec<RatVec>) -> Result<Vec<Dist>> {
    points.into_iter().map(Dist::new).collect()
}

/// A finite table `S(p, y)` over predictions × outcomes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreTable {
    outcomes: OutcomeSet,
    preds: Vec<Dist>,
    values: Vec<Vec<ExtReal>>,
    index: BTreeMap<Dist, usize>,
}

impl ScoreTable {
    pub fn new(outcomes: OutcomeSet, preds: Vec<Dist>, values: Vec<Vec<ExtReal>>) -> Result<Self> {
        let n = outcomes.len();
        if values.len() != preds.len() {
            return Err(Error::DimensionMismatch {
                expected: preds.len(),
                found: values.len(),
            });
        }
        let mut index = BTreeMap::new();
        for (i, (p, row)) in preds.iter().zip(&values).enumerate() {
            for found in [p.dim(), row.len()] {
                if found != n {
                    return Err(Error::DimensionMismatch { expected: n, found });
                }
            }
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::InvalidDist(format!("prediction {p} listed twice")));
            }
        }
        Ok(ScoreTable {
            outcomes,
            preds,
            values,
            index,
        })
    }

    /// `S(p, y) = rule(p, y)` for every prediction and outcome index.
    pub fn from_fn(
        outcomes: OutcomeSet,
        preds: Vec<Dist>,
        rule: impl Fn(&Dist, usize) -> ExtReal,
    ) -> Result<Self> {
        let n = outcomes.len();
        let values = preds
            .iter()
            .map(|p| (0..n).map(|y| rule(p, y)).collect())
            .collect();
        ScoreTable::new(outcomes, preds, values)
    }

    pub fn outcomes(&self) -> &OutcomeSet {
        &self.outcomes
    }

    pub fn preds(&self) -> &[Dist] {
        &self.preds
    }

    pub fn values(&self) -> &[Vec<ExtReal>] {
        &self.values
    }

    /// No entry is `+∞`. Always recomputed.
    pub fn is_regular(&self) -> bool {
        self.values
            .iter()
            .all(|row| row.iter().all(|v| *v != ExtReal::PosInf))
    }

    fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::NotRegular)
        }
    }

    pub fn position(&self, p: &Dist) -> Result<usize> {
        self.index.get(p).copied().ok_or_else(|| Error::UnknownPred {
            point: p.to_string(),
        })
    }

    pub fn row(&self, p: &Dist) -> Result<&[ExtReal]> {
        Ok(&self.values[self.position(p)?])
    }

    pub fn get(&self, p: &Dist, label: &str) -> Result<&ExtReal> {
        let y = self.outcomes.index_of(label)?;
        Ok(&self.row(p)?[y])
    }

    /// One line per (prediction, outcome), probabilities and finite scores as
    /// decimals with `digits` places.
    pub fn to_csv(&self, digits: u32) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<String> = self.outcomes.labels().iter().map(|l| format!("p_{l}")).collect();
        header.push("outcome".into());
        header.push("score".into());
        w.write_record(&header).map_err(csv_err)?;
        for (p, row) in self.preds.iter().zip(&self.values) {
            for (label, v) in self.outcomes.labels().iter().zip(row) {
                let mut record: Vec<String> = p.probs().coords().iter().map(|c| precision::to_decimal(c, digits)).collect();
                record.push(label.clone());
                record.push(precision::ext_to_decimal(v, digits));
                w.write_record(&record).map_err(csv_err)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Serialize, Deserialize)]
struct ScoreTableJson {
    outcomes: OutcomeSet,
    preds: Vec<Dist>,
    values: Vec<Vec<ExtReal>>,
    #[serde(default, skip_deserializing)]
    regular: bool,
}

impl Serialize for ScoreTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ScoreTableJson {
            outcomes: self.outcomes.clone(),
            preds: self.preds.clone(),
            values: self.values.clone(),
            regular: self.is_regular(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ScoreTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ScoreTableJson::deserialize(deserializer)?;
        ScoreTable::new(raw.outcomes, raw.preds, raw.values).map_err(serde::de::Error::custom)
    }
}

fn check_spec_dim(g: &ConvexSpec, outcomes: &OutcomeSet) -> Result<()> {
    if g.dim() == outcomes.len() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: outcomes.len(),
            found: g.dim(),
        })
    }
}

fn finite_value_at(g: &ConvexSpec, p: &Dist) -> Result<Rational> {
    match g.eval(p.probs())? {
        ExtReal::Finite(v) => Ok(v),
        _ => Err(Error::PredOutsideDomain {
            point: p.to_string(),
        }),
    }
}

/// `S(p, y) = g(p) + f_p(δ_y − p)` with `f_p` from the primary selector.
pub fn subtangent_rule(g: &ConvexSpec, outcomes: &OutcomeSet, preds: &[Dist]) -> Result<ScoreTable> {
    check_spec_dim(g, outcomes)?;
    let mut subgrads = Vec::with_capacity(preds.len());
    for p in preds {
        finite_value_at(g, p)?;
        subgrads.push(g.subgradient(p.probs())?);
    }
    subtangent_rule_with_subgradients(g, outcomes, preds, &subgrads)
}

/// The subtangent rule for caller-chosen subgradients, one per prediction.
/// The resulting table may be irregular.
pub fn subtangent_rule_with_subgradients(
    g: &ConvexSpec,
    outcomes: &OutcomeSet,
    preds: &[Dist],
    subgrads: &[LinExt],
) -> Result<ScoreTable> {
    check_spec_dim(g, outcomes)?;
    if subgrads.len() != preds.len() {
        return Err(Error::DimensionMismatch {
            expected: preds.len(),
            found: subgrads.len(),
        });
    }
    let n = outcomes.len();
    let mut values = Vec::with_capacity(preds.len());
    for (p, f) in preds.iter().zip(subgrads) {
        let gp = finite_value_at(g, p)?;
        let row = (0..n)
            .map(|y| Ok(f.eval(&vertex(n, y).sub(p.probs())?)?.add_finite(&gp)))
            .collect::<Result<Vec<_>>>()?;
        values.push(row);
    }
    ScoreTable::new(outcomes.clone(), preds.to_vec(), values)
}

/// `S(p, y) = f_p(δ_y)`.
pub fn subgradient_rule(g: &ConvexSpec, outcomes: &OutcomeSet, preds: &[Dist]) -> Result<ScoreTable> {
    check_spec_dim(g, outcomes)?;
    let n = outcomes.len();
    let mut values = Vec::with_capacity(preds.len());
    for p in preds {
        finite_value_at(g, p)?;
        let f = g.subgradient(p.probs())?;
        let row = (0..n)
            .map(|y| f.eval(&vertex(n, y)))
            .collect::<Result<Vec<_>>>()?;
        values.push(row);
    }
    ScoreTable::new(outcomes.clone(), preds.to_vec(), values)
}

/// A linear extended function agreeing with `S(p, ·)` at every vertex:
/// directions `−δ_y` for the `−∞` entries in outcome order, then the
/// finite entries as the tail.
pub fn extended_expected_score(s: &ScoreTable, p: &Dist) -> Result<LinExt> {
    s.require_regular()?;
    row_linext(s.row(p)?)
}

fn row_linext(row: &[ExtReal]) -> Result<LinExt> {
    let n = row.len();
    let mut dirs = Vec::new();
    let mut tail = vec![Rational::zero(); n];
    for (y, v) in row.iter().enumerate() {
        match v {
            ExtReal::NegInf => dirs.push(vertex(n, y).neg()),
            ExtReal::Finite(r) => tail[y] = r.clone(),
            ExtReal::PosInf => return Err(Error::NotRegular),
        }
    }
    LinExt::new(n, dirs, RatVec::new(tail))
}

fn row_expected(row: &[ExtReal], q: &Dist) -> Result<ExtReal> {
    let terms: Vec<ExtReal> = row
        .iter()
        .zip(q.probs().coords())
        .map(|(v, qy)| v.scale(qy))
        .collect();
    extreal::sum(&terms)
}

/// `S(p; q) = Σ_y q(y)·S(p, y)`.
pub fn expected_score(s: &ScoreTable, p: &Dist, q: &Dist) -> Result<ExtReal> {
    s.require_regular()?;
    if q.dim() != s.outcomes.len() {
        return Err(Error::DimensionMismatch {
            expected: s.outcomes.len(),
            found: q.dim(),
        });
    }
    row_expected(s.row(p)?, q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum ProperVerdict {
    StrictlyProperOnGrid { preds: usize },
    ProperOnGrid { preds: usize, tie: (Dist, Dist) },
    /// `S(p; q) > S(q; q)`.
    Violation {
        p: Dist,
        q: Dist,
        score_p_at_q: ExtReal,
        score_q_at_q: ExtReal,
    },
}

impl ProperVerdict {
    pub fn is_proper(&self) -> bool {
        !matches!(self, ProperVerdict::Violation { .. })
    }

    pub fn is_strict(&self) -> bool {
        matches!(self, ProperVerdict::StrictlyProperOnGrid { .. })
    }

    pub fn summary(&self) -> String {
        match self {
            ProperVerdict::StrictlyProperOnGrid { .. } => "strictly-proper-on-grid".into(),
            ProperVerdict::ProperOnGrid { .. } => "proper-on-grid".into(),
            ProperVerdict::Violation { p, q, .. } => format!("violation p={p} q={q}"),
        }
    }
}

/// Compares `S(p; q)` with `S(q; q)` for all ordered pairs `p ≠ q`; the
/// first violation in prediction order is reported.
pub fn verify_properness(s: &ScoreTable) -> Result<ProperVerdict> {
    s.require_regular()?;
    let truthful: Vec<ExtReal> = s
        .preds
        .iter()
        .zip(&s.values)
        .map(|(q, row)| row_expected(row, q))
        .collect::<Result<_>>()?;
    let mut tie = None;
    for (p, row) in s.preds.iter().zip(&s.values) {
        for (q, best) in s.preds.iter().zip(&truthful) {
            if p == q {
                continue;
            }
            let score = row_expected(row, q)?;
            if score > *best {
                return Ok(ProperVerdict::Violation {
                    p: p.clone(),
                    q: q.clone(),
                    score_p_at_q: score,
                    score_q_at_q: best.clone(),
                });
            }
            if score == *best && tie.is_none() {
                tie = Some((p.clone(), q.clone()));
            }
        }
    }
    let preds = s.preds.len();
    Ok(match tie {
        None => ProperVerdict::StrictlyProperOnGrid { preds },
        Some(tie) => ProperVerdict::ProperOnGrid { preds, tie },
    })
}

fn check_dist_dim(f: &LinExt, p: &Dist) -> Result<()> {
    if f.dim() == p.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: p.dim(),
        })
    }
}

/// The parameterization test: every direction is constant on `Supp(p)`,
/// and for `y ∉ Supp(p)` the directions agree with the support value up
/// to some level and then fall strictly below it (or agree throughout).
pub fn interior_finite(f: &LinExt, p: &Dist) -> Result<bool> {
    check_dist_dim(f, p)?;
    let support = p.support();
    let anchor = support[0];
    for v in f.dirs() {
        if support.iter().any(|&y| v[y] != v[anchor]) {
            return Ok(false);
        }
    }
    for y in (0..p.dim()).filter(|y| !p.prob(*y).is_positive()) {
        let first_difference = f.dirs().iter().find(|v| v[y] != v[anchor]);
        if let Some(v) = first_difference {
            if v[y] > v[anchor] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The evaluation test: `f(δ_y − p) ≠ +∞` for every outcome `y`.
pub fn interior_finite_via_eval(f: &LinExt, p: &Dist) -> Result<bool> {
    check_dist_dim(f, p)?;
    let n = p.dim();
    for y in 0..n {
        if f.eval(&vertex(n, y).sub(p.probs())?)? == ExtReal::PosInf {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub p: Dist,
    pub f: LinExt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IllVerdict {
    Certified { witnesses: Vec<Witness> },
    /// No registered selector offers a `p`-interior-finite subgradient;
    /// `f` is the primary selector's answer.
    FailsAt { p: Dist, f: LinExt },
}

impl IllVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, IllVerdict::Certified { .. })
    }

    pub fn summary(&self) -> String {
        match self {
            IllVerdict::Certified { .. } => "certified".into(),
            IllVerdict::FailsAt { p, .. } => format!("fails-at p={p}"),
        }
    }
}

/// Looks for a `p`-interior-finite extended subgradient at every grid
/// point, trying the primary selector first and then any alternates.
pub fn ill_certificate(g: &ConvexSpec, grid: &[Dist]) -> Result<IllVerdict> {
    let mut witnesses = Vec::with_capacity(grid.len());
    for p in grid {
        let candidates = g.subgradients(p.probs())?;
        if candidates.is_empty() {
            return Err(Error::SelectorUnavailable {
                point: p.to_string(),
            });
        }
        let mut found = None;
        for f in &candidates {
            if interior_finite(f, p)? {
                found = Some(f.clone());
                break;
            }
        }
        match found {
            Some(f) => witnesses.push(Witness { p: p.clone(), f }),
            None => {
                return Ok(IllVerdict::FailsAt {
                    p: p.clone(),
                    f: candidates[0].clone(),
                })
            }
        }
    }
    Ok(IllVerdict::Certified { witnesses })
}

/// The convex function `g(q) = sup_p S_p(q)` of a proper table, where
/// `S_p` is the extended expected score of row `p`. Its selector returns
/// `S_q` at predictions `q` of the table.
pub fn savage_reconstruct(s: &ScoreTable) -> Result<ConvexSpec> {
    s.require_regular()?;
    if !verify_properness(s)?.is_proper() {
        return Err(Error::NotProper);
    }
    let rows: Vec<LinExt> = s.values.iter().map(|r| row_linext(r)).collect::<Result<_>>()?;
    let index: BTreeMap<RatVec, usize> = s
        .preds
        .iter()
        .enumerate()
        .map(|(i, p)| (p.probs().clone(), i))
        .collect();
    let n = s.outcomes.len();
    let eval_rows = rows.clone();
    let eval = move |q: &RatVec| {
        let values: Vec<ExtReal> = eval_rows
            .iter()
            .map(|f| f.eval(q).expect("dimension checked above"))
            .collect();
        extreal::sup(&values)
    };
    let selector = move |q: &RatVec| index.get(q).map(|&i| rows[i].clone());
    let domain = DomainHint::Points(s.preds.iter().map(|p| p.probs().clone()).collect());
    Ok(ConvexSpec::new(n, domain, eval, selector))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extreal::{int, rat};

    fn binary() -> OutcomeSet {
        OutcomeSet::new(["a", "b"]).unwrap()
    }

    fn d(xs: &[Rational]) -> Dist {
        Dist::new(RatVec::new(xs.to_vec())).unwrap()
    }

    #[test]
    fn delta_examples() {
        let o = binary();
        assert_eq!(delta("a", &o).unwrap(), d(&[int(1), int(0)]));
        assert_eq!(delta("b", &o).unwrap(), d(&[int(0), int(1)]));
        assert_eq!(delta("c", &o), Err(Error::UnknownLabel("c".into())));
    }

    #[test]
    fn dist_validation() {
        assert!(Dist::new(RatVec::new(vec![rat(1, 2), rat(1, 3)])).is_err());
        assert!(Dist::new(RatVec::new(vec![int(2), int(-1)])).is_err());
        assert_eq!(d(&[rat(1, 2), int(0), rat(1, 2)]).support(), vec![0, 2]);
        assert!(OutcomeSet::new(["a", "a"]).is_err());
        assert!(OutcomeSet::new(Vec::<String>::new()).is_err());
    }

    fn row_table(row: Vec<ExtReal>) -> (ScoreTable, Dist) {
        let p = d(&[rat(1, 2), rat(1, 2)]);
        (ScoreTable::new(binary(), vec![p.clone()], vec![row]).unwrap(), p)
    }

    #[test]
    fn expected_score_examples() {
        let (s, p) = row_table(vec![ExtReal::NegInf, ExtReal::from(3)]);
        assert_eq!(expected_score(&s, &p, &d(&[int(0), int(1)])).unwrap(), ExtReal::from(3));
        assert_eq!(expected_score(&s, &p, &p).unwrap(), ExtReal::NegInf);
        let (z, p) = row_table(vec![ExtReal::zero(), ExtReal::zero()]);
        assert_eq!(expected_score(&z, &p, &d(&[rat(1, 3), rat(2, 3)])).unwrap(), ExtReal::zero());
        let (bad, p) = row_table(vec![ExtReal::PosInf, ExtReal::zero()]);
        assert!(!bad.is_regular());
        assert_eq!(expected_score(&bad, &p, &p), Err(Error::NotRegular));
    }

    #[test]
    fn extended_expected_score_matches_rows() {
        let (s, p) = row_table(vec![ExtReal::NegInf, ExtReal::from(3)]);
        let f = extended_expected_score(&s, &p).unwrap();
        assert_eq!(f.dirs(), &[RatVec::from_ints(&[-1, 0])]);
        assert_eq!(f.eval(&RatVec::from_ints(&[1, 0])).unwrap(), ExtReal::NegInf);
        assert_eq!(f.eval(&RatVec::from_ints(&[0, 1])).unwrap(), ExtReal::from(3));
        let (z, p) = row_table(vec![ExtReal::zero(), ExtReal::zero()]);
        assert_eq!(extended_expected_score(&z, &p).unwrap(), LinExt::zero(2));
        assert!(matches!(
            extended_expected_score(&z, &d(&[int(1), int(0)])),
            Err(Error::UnknownPred { .. })
        ));
    }

    #[test]
    fn identity_rule_is_not_proper() {
        let preds = vec![d(&[int(1), int(0)]), d(&[rat(3, 5), rat(2, 5)])];
        let s = ScoreTable::from_fn(binary(), preds, |p, y| ExtReal::Finite(p.prob(y).clone())).unwrap();
        assert_eq!(
            verify_properness(&s).unwrap(),
            ProperVerdict::Violation {
                p: d(&[int(1), int(0)]),
                q: d(&[rat(3, 5), rat(2, 5)]),
                score_p_at_q: ExtReal::Finite(rat(3, 5)),
                score_q_at_q: ExtReal::Finite(rat(13, 25)),
            }
        );
        assert_eq!(savage_reconstruct(&s).unwrap_err(), Error::NotProper);
    }

    #[test]
    fn interior_finite_examples() {
        let p = d(&[int(1), int(0)]);
        let down = LinExt::new(2, vec![RatVec::from_ints(&[0, -1])], RatVec::from_ints(&[0, 0])).unwrap();
        let up = LinExt::new(2, vec![RatVec::from_ints(&[0, 1])], RatVec::from_ints(&[0, 0])).unwrap();
        let flat = LinExt::finite(RatVec::from_ints(&[3, -2]));
        for (f, expected) in [(&down, true), (&up, false), (&flat, true)] {
            assert_eq!(interior_finite(f, &p).unwrap(), expected);
            assert_eq!(interior_finite_via_eval(f, &p).unwrap(), expected);
        }
    }

    #[test]
    fn table_json_and_csv() {
        let (s, _) = row_table(vec![ExtReal::NegInf, ExtReal::Finite(rat(1, 3))]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"outcomes":["a","b"],"preds":[["1/2","1/2"]],"values":[["-inf","1/3"]],"regular":true}"#
        );
        let back: ScoreTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert_eq!(
            s.to_csv(3).unwrap(),
            "p_a,p_b,outcome,score\n0.500,0.500,a,-inf\n0.500,0.500,b,0.333\n"
        );
    }
}
