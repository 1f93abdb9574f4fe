//! Exact zero-sum game solving.
//!
//! Matrix games are solved by a rational simplex (Bland's rule) on the
//! column player's LP; the row strategy is read off the dual. Every solution
//! is checked against an exact best-response certificate before it is
//! returned. Signaling games (one informed player whose action is observed)
//! are reduced to matrix games over pure policies and mapped back to
//! behavioral strategies.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("probabilities {0} must be non-negative and sum to 1")]
    Probabilities(String),
    #[error("game has no rows or no columns")]
    Empty,
    #[error("row {row} has {got} entries, expected {expected}")]
    Ragged { row: usize, got: usize, expected: usize },
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("invalid signaling game: {0}")]
    InvalidGame(String),
    #[error("game file line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_integer(n: i64) -> Rational {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Rational {
        Rational(self.0.recip())
    }

    /// Decimal approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Rational>>(items: I) -> Rational {
        let mut s = Rational::zero();
        for x in items {
            s += x;
        }
        s
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = String;
    fn from_str(s: &str) -> Result<Rational, String> {
        let bad = || format!("{s:?} is not a rational p/q");
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $f(self, o: &Rational) -> Rational {
                Rational((&self.0).$f(&o.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $f(self, o: Rational) -> Rational {
                Rational(self.0.$f(o.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, o: &Rational) {
        self.0 += &o.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// P(win) - P(loss).
pub fn equity(p_win: &Rational, p_tie: &Rational, p_loss: &Rational) -> Result<Rational, GameError> {
    let all = [p_win, p_tie, p_loss];
    if all.iter().any(|p| p.is_negative()) || Rational::sum(all) != Rational::one() {
        return Err(GameError::Probabilities(format!("{p_win}, {p_tie}, {p_loss}")));
    }
    Ok(p_win - p_loss)
}

/// A probability distribution over labelled choices, kept in label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedStrategy {
    pub entries: Vec<(String, Rational)>,
}

impl Serialize for MixedStrategy {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.entries.iter().map(|(k, v)| (k, v)))
    }
}

impl MixedStrategy {
    pub fn new(entries: Vec<(String, Rational)>) -> Result<MixedStrategy, GameError> {
        let m = MixedStrategy { entries };
        m.validate()?;
        Ok(m)
    }

    /// All weight on `choice`.
    pub fn pure(labels: &[String], choice: &str) -> Result<MixedStrategy, GameError> {
        if !labels.iter().any(|l| l == choice) {
            return Err(GameError::InvalidStrategy(format!("{choice} is not one of {labels:?}")));
        }
        Ok(MixedStrategy {
            entries: labels
                .iter()
                .map(|l| (l.clone(), if l == choice { Rational::one() } else { Rational::zero() }))
                .collect(),
        })
    }

    pub fn uniform(labels: &[String]) -> MixedStrategy {
        let p = Rational::new(1, labels.len() as i64);
        MixedStrategy {
            entries: labels.iter().map(|l| (l.clone(), p.clone())).collect(),
        }
    }

    fn validate(&self) -> Result<(), GameError> {
        if self.entries.iter().any(|(_, p)| p.is_negative()) || Rational::sum(self.entries.iter().map(|(_, p)| p)) != Rational::one() {
            return Err(GameError::InvalidStrategy(format!("{self}")));
        }
        Ok(())
    }

    pub fn get(&self, label: &str) -> Rational {
        self.entries
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn probabilities(&self) -> Vec<Rational> {
        self.entries.iter().map(|(_, p)| p.clone()).collect()
    }

    /// Labels with positive probability.
    pub fn support(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(_, p)| p.is_positive())
            .map(|(l, _)| l.as_str())
            .collect()
    }

    fn matches_labels(&self, labels: &[String]) -> bool {
        self.entries.len() == labels.len() && self.entries.iter().zip(labels).all(|((a, _), b)| a == b)
    }
}

impl fmt::Display for MixedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|(l, p)| format!("{l} {p}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Zero-sum game; entries are payoffs to the (maximizing) row player.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixGame {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub payoffs: Vec<Vec<Rational>>,
}

impl MatrixGame {
    pub fn new(rows: Vec<String>, cols: Vec<String>, payoffs: Vec<Vec<Rational>>) -> Result<MatrixGame, GameError> {
        if rows.is_empty() || cols.is_empty() || payoffs.len() != rows.len() {
            return Err(GameError::Empty);
        }
        for (i, r) in payoffs.iter().enumerate() {
            if r.len() != cols.len() {
                return Err(GameError::Ragged {
                    row: i,
                    got: r.len(),
                    expected: cols.len(),
                });
            }
        }
        Ok(MatrixGame { rows, cols, payoffs })
    }

    /// Game with integer payoffs and generated labels.
    pub fn from_integers(payoffs: &[Vec<i64>]) -> Result<MatrixGame, GameError> {
        let rows = (0..payoffs.len()).map(|i| format!("r{i}")).collect();
        let cols = (0..payoffs.first().map_or(0, Vec::len)).map(|j| format!("c{j}")).collect();
        let p = payoffs
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
            .collect();
        MatrixGame::new(rows, cols, p)
    }

    /// Row player's expected payoff of pure row `i` against column mix `y`.
    pub fn row_payoff(&self, i: usize, y: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (a, p) in self.payoffs[i].iter().zip(y) {
            s += &(a * p);
        }
        s
    }

    /// Row player's expected payoff of row mix `x` against pure column `j`.
    pub fn col_payoff(&self, x: &[Rational], j: usize) -> Rational {
        let mut s = Rational::zero();
        for (row, p) in self.payoffs.iter().zip(x) {
            s += &(&row[j] * p);
        }
        s
    }

    pub fn expected(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, p) in x.iter().enumerate() {
            s += &(p * &self.row_payoff(i, y));
        }
        s
    }
}

/// Exact proof that (value, x, y) solves a matrix game: no pure row earns
/// more than `value` against `y`, no pure column holds `x` below `value`,
/// and the profile itself yields `value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub row_payoffs: Vec<Rational>,
    pub col_payoffs: Vec<Rational>,
    pub profile_payoff: Rational,
    pub value: Rational,
}

impl Certificate {
    pub fn new(game: &MatrixGame, value: &Rational, x: &[Rational], y: &[Rational]) -> Certificate {
        Certificate {
            row_payoffs: (0..game.rows.len()).map(|i| game.row_payoff(i, y)).collect(),
            col_payoffs: (0..game.cols.len()).map(|j| game.col_payoff(x, j)).collect(),
            profile_payoff: game.expected(x, y),
            value: value.clone(),
        }
    }

    pub fn holds(&self) -> bool {
        self.row_payoffs.iter().all(|p| *p <= self.value) && self.col_payoffs.iter().all(|p| *p >= self.value) && self.profile_payoff == self.value
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixSolution {
    pub value: Rational,
    pub row: MixedStrategy,
    pub col: MixedStrategy,
    pub certificate: Certificate,
}

/// Solves `game` exactly. Panics only if the internal certificate check
/// fails, which would be a solver bug.
pub fn solve_matrix(game: &MatrixGame) -> MatrixSolution {
    let m = game.rows.len();
    let n = game.cols.len();
    // Shift so every entry is at least 1; the LP value is then positive.
    let min = game.payoffs.iter().flatten().min().expect("non-empty game").clone();
    let shift = Rational::one() - min;
    let width = n + m + 1;
    let rhs = width - 1;
    let mut t: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = vec![Rational::zero(); width];
            for j in 0..n {
                row[j] = &game.payoffs[i][j] + &shift;
            }
            row[n + i] = Rational::one();
            row[rhs] = Rational::one();
            row
        })
        .collect();
    let mut z = vec![Rational::zero(); width];
    for zj in z.iter_mut().take(n) {
        *zj = Rational::one();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Maximize sum(y) subject to B y <= 1, y >= 0.
    while let Some(e) = (0..rhs).find(|&j| z[j].is_positive()) {
        let mut pivot: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !t[i][e].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][e];
            let better = match &pivot {
                None => true,
                Some((r, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*r]),
            };
            if better {
                pivot = Some((i, ratio));
            }
        }
        let (r, _) = pivot.expect("LP is bounded because every shifted entry is positive");
        let p = t[r][e].clone();
        for v in t[r].iter_mut() {
            *v = &*v / &p;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[e].is_zero() {
                let f = row[e].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        let f = z[e].clone();
        for (v, pv) in z.iter_mut().zip(&prow) {
            *v = &*v - &(&f * pv);
        }
        basis[r] = e;
    }
    let total = -&z[rhs];
    let shifted_value = total.recip();
    let mut y = vec![Rational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            y[b] = &t[i][rhs] * &shifted_value;
        }
    }
    let x: Vec<Rational> = (0..m).map(|i| -&z[n + i] * shifted_value.clone()).collect();
    let value = shifted_value - shift;
    let certificate = Certificate::new(game, &value, &x, &y);
    assert!(certificate.holds(), "simplex produced an invalid equilibrium certificate");
    MatrixSolution {
        value,
        row: MixedStrategy {
            entries: game.rows.iter().cloned().zip(x).collect(),
        },
        col: MixedStrategy {
            entries: game.cols.iter().cloned().zip(y).collect(),
        },
        certificate,
    }
}

/// A private type of the informed (hero) player.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeroType {
    pub name: String,
    pub prior: Rational,
    pub actions: Vec<String>,
}

/// One-sided-information game: the hero knows their type and picks a
/// public action; the observer sees only the action and responds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignalingGame {
    pub types: Vec<HeroType>,
    /// Responses available after each observable action, in first-seen
    /// action order.
    pub responses: Vec<(String, Vec<String>)>,
    /// `payoffs[t][a][r]`: hero payoff for type `t`, its `a`-th action and
    /// the `r`-th response to that action.
    pub payoffs: Vec<Vec<Vec<Rational>>>,
}

/// Per-type (hero) or per-observation (observer) mixed strategies.
pub type Behavioral = Vec<(String, MixedStrategy)>;

impl SignalingGame {
    /// Builds a game, asking `payoff(type, action, response)` for every
    /// triple.
    pub fn new<F>(types: Vec<HeroType>, responses: Vec<(String, Vec<String>)>, mut payoff: F) -> Result<SignalingGame, GameError>
    where
        F: FnMut(&str, &str, &str) -> Option<Rational>,
    {
        if types.is_empty() {
            return Err(GameError::InvalidGame("no hero types".into()));
        }
        if Rational::sum(types.iter().map(|t| &t.prior)) != Rational::one() || types.iter().any(|t| t.prior.is_negative()) {
            return Err(GameError::InvalidGame("priors must be non-negative and sum to 1".into()));
        }
        let mut payoffs = Vec::new();
        for t in &types {
            if t.actions.is_empty() {
                return Err(GameError::InvalidGame(format!("type {} has no actions", t.name)));
            }
            let mut per_action = Vec::new();
            for a in &t.actions {
                let rs = responses
                    .iter()
                    .find(|(o, _)| o == a)
                    .map(|(_, r)| r)
                    .filter(|r| !r.is_empty())
                    .ok_or_else(|| GameError::InvalidGame(format!("no responses listed for action {a}")))?;
                let mut row = Vec::new();
                for r in rs {
                    row.push(payoff(&t.name, a, r).ok_or_else(|| GameError::InvalidGame(format!("missing payoff for {} {a} {r}", t.name)))?);
                }
                per_action.push(row);
            }
            payoffs.push(per_action);
        }
        let game = SignalingGame { types, responses, payoffs };
        let observed = game.observations();
        if game.responses.iter().any(|(o, _)| !observed.contains(o)) || game.responses.len() != observed.len() {
            return Err(GameError::InvalidGame("responses must be listed once per observable action".into()));
        }
        Ok(game)
    }

    /// Observable actions in first-seen order.
    pub fn observations(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for t in &self.types {
            for a in &t.actions {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
        }
        out
    }

    fn responses_to(&self, action: &str) -> &[String] {
        self.responses
            .iter()
            .find(|(o, _)| o == action)
            .map(|(_, r)| r.as_slice())
            .unwrap_or(&[])
    }

    pub fn payoff(&self, ty: usize, action: &str, response: &str) -> Option<&Rational> {
        let a = self.types[ty].actions.iter().position(|x| x == action)?;
        let r = self.responses_to(action).iter().position(|x| x == response)?;
        Some(&self.payoffs[ty][a][r])
    }

    /// Multiplies every payoff by `k`.
    pub fn scaled(&self, k: &Rational) -> SignalingGame {
        let mut g = self.clone();
        for v in g.payoffs.iter_mut().flatten().flatten() {
            *v = &*v * k;
        }
        g
    }

    fn check_hero(&self, hero: &Behavioral) -> Result<(), GameError> {
        if hero.len() != self.types.len() {
            return Err(GameError::InvalidStrategy("one mix per hero type is required".into()));
        }
        for ((name, mix), t) in hero.iter().zip(&self.types) {
            if *name != t.name || !mix.matches_labels(&t.actions) {
                return Err(GameError::InvalidStrategy(format!("mix for {name} does not match type {}", t.name)));
            }
            mix.validate()?;
        }
        Ok(())
    }

    fn check_observer(&self, observer: &Behavioral) -> Result<(), GameError> {
        if observer.len() != self.responses.len() {
            return Err(GameError::InvalidStrategy("one mix per observable action is required".into()));
        }
        for ((obs, mix), (o, rs)) in observer.iter().zip(&self.responses) {
            if obs != o || !mix.matches_labels(rs) {
                return Err(GameError::InvalidStrategy(format!("mix for {obs} does not match responses to {o}")));
            }
            mix.validate()?;
        }
        Ok(())
    }

    /// Hero's expected payoff of a behavioral profile.
    pub fn profile_value(&self, hero: &Behavioral, observer: &Behavioral) -> Result<Rational, GameError> {
        self.check_hero(hero)?;
        self.check_observer(observer)?;
        let mut v = Rational::zero();
        for (ti, t) in self.types.iter().enumerate() {
            let mix = &hero[ti].1;
            for (ai, a) in t.actions.iter().enumerate() {
                let pa = mix.get(a);
                if pa.is_zero() {
                    continue;
                }
                let resp = &observer.iter().find(|(o, _)| o == a).expect("checked").1;
                for (ri, r) in self.responses_to(a).iter().enumerate() {
                    v += &(&(&t.prior * &pa) * &(&resp.get(r) * &self.payoffs[ti][ai][ri]));
                }
            }
        }
        Ok(v)
    }
}

/// Pure policies of each side, as index tuples, in lexicographic order.
fn policies(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &k in sizes {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..k).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}

struct Reduction {
    matrix: MatrixGame,
    hero_policies: Vec<Vec<usize>>,
    observer_policies: Vec<Vec<usize>>,
}

fn reduce(sg: &SignalingGame) -> Reduction {
    let hero_policies = policies(&sg.types.iter().map(|t| t.actions.len()).collect::<Vec<_>>());
    let observer_policies = policies(&sg.responses.iter().map(|(_, r)| r.len()).collect::<Vec<_>>());
    let rows = hero_policies
        .iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .map(|(t, &a)| format!("{}:{}", sg.types[t].name, sg.types[t].actions[a]))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    let cols = observer_policies
        .iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .map(|(o, &r)| format!("{}:{}", sg.responses[o].0, sg.responses[o].1[r]))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    let payoffs = hero_policies
        .iter()
        .map(|hp| {
            observer_policies
                .iter()
                .map(|op| {
                    let mut v = Rational::zero();
                    for (t, &a) in hp.iter().enumerate() {
                        let action = &sg.types[t].actions[a];
                        let o = sg.responses.iter().position(|(x, _)| x == action).expect("validated");
                        v += &(&sg.types[t].prior * &sg.payoffs[t][a][op[o]]);
                    }
                    v
                })
                .collect()
        })
        .collect();
    Reduction {
        matrix: MatrixGame::new(rows, cols, payoffs).expect("policies are non-empty"),
        hero_policies,
        observer_policies,
    }
}

/// The matrix game over pure policies: rows pick one action per hero type,
/// columns one response per observable action; entries are prior-weighted.
pub fn signaling_to_matrix(sg: &SignalingGame) -> MatrixGame {
    reduce(sg).matrix
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Posterior {
    pub observation: String,
    /// False when the hero never takes this action in equilibrium.
    pub on_path: bool,
    pub beliefs: MixedStrategy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equilibrium {
    pub value: Rational,
    pub hero: Behavioral,
    pub observer: Behavioral,
    pub posteriors: Vec<Posterior>,
    pub matrix: MatrixSolution,
}

/// Bayes' rule on the hero strategy. Observations the hero never makes
/// fall back to the prior restricted to types that have the action.
pub fn posteriors(sg: &SignalingGame, hero: &Behavioral) -> Vec<Posterior> {
    sg.observations()
        .into_iter()
        .map(|o| {
            let names: Vec<String> = sg.types.iter().map(|t| t.name.clone()).collect();
            let joint: Vec<Rational> = sg
                .types
                .iter()
                .zip(hero)
                .map(|(t, (_, mix))| &t.prior * &mix.get(&o))
                .collect();
            let total = Rational::sum(&joint);
            let (on_path, weights) = if total.is_positive() {
                (true, joint.iter().map(|w| w / &total).collect::<Vec<_>>())
            } else {
                let restricted: Vec<Rational> = sg
                    .types
                    .iter()
                    .map(|t| if t.actions.contains(&o) { t.prior.clone() } else { Rational::zero() })
                    .collect();
                let total = Rational::sum(&restricted);
                let weights = if total.is_positive() {
                    restricted.iter().map(|w| w / &total).collect()
                } else {
                    sg.types.iter().map(|t| t.prior.clone()).collect()
                };
                (false, weights)
            };
            Posterior {
                observation: o,
                on_path,
                beliefs: MixedStrategy {
                    entries: names.into_iter().zip(weights).collect(),
                },
            }
        })
        .collect()
}

/// Exact equilibrium of `sg` with behavioral strategies and posteriors.
pub fn solve_signaling(sg: &SignalingGame) -> Equilibrium {
    let red = reduce(sg);
    let sol = solve_matrix(&red.matrix);
    let x = sol.row.probabilities();
    let y = sol.col.probabilities();
    let hero: Behavioral = sg
        .types
        .iter()
        .enumerate()
        .map(|(t, ty)| {
            let mut probs = vec![Rational::zero(); ty.actions.len()];
            for (p, pol) in x.iter().zip(&red.hero_policies) {
                probs[pol[t]] += p;
            }
            (
                ty.name.clone(),
                MixedStrategy {
                    entries: ty.actions.iter().cloned().zip(probs).collect(),
                },
            )
        })
        .collect();
    let observer: Behavioral = sg
        .responses
        .iter()
        .enumerate()
        .map(|(o, (obs, rs))| {
            let mut probs = vec![Rational::zero(); rs.len()];
            for (p, pol) in y.iter().zip(&red.observer_policies) {
                probs[pol[o]] += p;
            }
            (
                obs.clone(),
                MixedStrategy {
                    entries: rs.iter().cloned().zip(probs).collect(),
                },
            )
        })
        .collect();
    let posteriors = posteriors(sg, &hero);
    Equilibrium {
        value: sol.value.clone(),
        hero,
        observer,
        posteriors,
        matrix: sol,
    }
}

/// The side whose strategy is held fixed in a best-response computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixed {
    Hero(Behavioral),
    Observer(Behavioral),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BestResponse {
    /// Payoff to the exploiting side (the observer's payoff is the negated
    /// hero payoff).
    pub value: Rational,
    /// A pure best response, first maximizer in label order.
    pub strategy: Behavioral,
}

/// Optimal payoff of the side that is not fixed.
pub fn best_response_value(sg: &SignalingGame, fixed: &Fixed) -> Result<BestResponse, GameError> {
    match fixed {
        Fixed::Hero(hero) => {
            sg.check_hero(hero)?;
            let mut total = Rational::zero();
            let mut strategy = Vec::new();
            for (obs, rs) in &sg.responses {
                // Observer minimizes hero payoff separately per observation.
                let mut best: Option<(usize, Rational)> = None;
                for (ri, r) in rs.iter().enumerate() {
                    let mut v = Rational::zero();
                    for (ti, t) in sg.types.iter().enumerate() {
                        if let Some(p) = sg.payoff(ti, obs, r) {
                            v += &(&(&t.prior * &hero[ti].1.get(obs)) * p);
                        }
                    }
                    if best.as_ref().is_none_or(|(_, b)| v < *b) {
                        best = Some((ri, v));
                    }
                }
                let (ri, v) = best.expect("responses are non-empty");
                total += &v;
                strategy.push((obs.clone(), MixedStrategy::pure(rs, &rs[ri])?));
            }
            Ok(BestResponse { value: -total, strategy })
        }
        Fixed::Observer(observer) => {
            sg.check_observer(observer)?;
            let mut total = Rational::zero();
            let mut strategy = Vec::new();
            for (ti, t) in sg.types.iter().enumerate() {
                let mut best: Option<(usize, Rational)> = None;
                for (ai, a) in t.actions.iter().enumerate() {
                    let resp = &observer.iter().find(|(o, _)| o == a).expect("checked").1;
                    let mut v = Rational::zero();
                    for (ri, r) in sg.responses_to(a).iter().enumerate() {
                        v += &(&resp.get(r) * &sg.payoffs[ti][ai][ri]);
                    }
                    if best.as_ref().is_none_or(|(_, b)| v > *b) {
                        best = Some((ai, v));
                    }
                }
                let (ai, v) = best.expect("actions are non-empty");
                total += &(&t.prior * &v);
                strategy.push((t.name.clone(), MixedStrategy::pure(&t.actions, &t.actions[ai])?));
            }
            Ok(BestResponse { value: total, strategy })
        }
    }
}

/// Exact equilibrium test for a behavioral profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileCheck {
    /// Hero payoff of the profile.
    pub value: Rational,
    /// Best hero payoff against the observer's strategy.
    pub hero_best: Rational,
    /// Best observer payoff against the hero's strategy.
    pub observer_best: Rational,
}

impl ProfileCheck {
    pub fn is_equilibrium(&self) -> bool {
        self.hero_best == self.value && self.observer_best == -&self.value
    }
}

pub fn check_profile(sg: &SignalingGame, hero: &Behavioral, observer: &Behavioral) -> Result<ProfileCheck, GameError> {
    Ok(ProfileCheck {
        value: sg.profile_value(hero, observer)?,
        hero_best: best_response_value(sg, &Fixed::Observer(observer.clone()))?.value,
        observer_best: best_response_value(sg, &Fixed::Hero(hero.clone()))?.value,
    })
}

/// A game read from a text file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameFile {
    Matrix(MatrixGame),
    Signaling(SignalingGame),
}

/// Parses the plain-text game format.
///
/// ```text
/// matrix
/// rows rock paper scissors
/// cols rock paper scissors
/// row rock 0 -1 1
/// row paper 1 0 -1
/// row scissors -1 1 0
/// ```
///
/// ```text
/// signaling
/// type M 1/2 8K H11          # name, prior, actions
/// type D 1/2 8K H11
/// responses 8K N2 14B        # observable action, responses
/// responses H11 N2 14B
/// payoff M 8K N2 -1          # type, action, response, hero payoff
/// ```
///
/// Entries are integers or `p/q`; `#` starts a comment.
pub fn parse_game(text: &str) -> Result<GameFile, GameError> {
    let mut kind = None;
    let mut rows: Vec<String> = Vec::new();
    let mut cols: Vec<String> = Vec::new();
    let mut row_entries: Vec<(usize, String, Vec<Rational>)> = Vec::new();
    let mut types = Vec::new();
    let mut responses = Vec::new();
    let mut payoffs: Vec<(usize, [String; 3], Rational)> = Vec::new();
    let mut last = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |reason: String| GameError::Parse { line, reason };
        let rat = |s: &str| s.parse::<Rational>().map_err(err);
        let f: Vec<&str> = body.split_whitespace().collect();
        match (kind, f[0], &f[1..]) {
            (None, "matrix", []) => kind = Some(true),
            (None, "signaling", []) => kind = Some(false),
            (None, _, _) => return Err(err("file must start with `matrix` or `signaling`".into())),
            (Some(true), "rows", labels) => rows = labels.iter().map(|s| s.to_string()).collect(),
            (Some(true), "cols", labels) => cols = labels.iter().map(|s| s.to_string()).collect(),
            (Some(true), "row", [label, vals @ ..]) => {
                let vals = vals.iter().map(|v| rat(v)).collect::<Result<Vec<_>, _>>()?;
                row_entries.push((line, label.to_string(), vals));
            }
            (Some(false), "type", [name, prior, actions @ ..]) if !actions.is_empty() => types.push(HeroType {
                name: name.to_string(),
                prior: rat(prior)?,
                actions: actions.iter().map(|s| s.to_string()).collect(),
            }),
            (Some(false), "responses", [obs, rs @ ..]) if !rs.is_empty() => {
                responses.push((obs.to_string(), rs.iter().map(|s| s.to_string()).collect()))
            }
            (Some(false), "payoff", [t, a, r, v]) => payoffs.push((line, [t.to_string(), a.to_string(), r.to_string()], rat(v)?)),
            (_, d, _) => return Err(err(format!("malformed {d:?} line"))),
        }
    }
    match kind {
        None => Err(GameError::Parse {
            line: last.max(1),
            reason: "empty game file".into(),
        }),
        Some(true) => {
            let mut table = Vec::new();
            for r in &rows {
                let (_, _, vals) = row_entries
                    .iter()
                    .find(|(_, l, _)| l == r)
                    .ok_or_else(|| GameError::Parse {
                        line: last,
                        reason: format!("no entries for row {r}"),
                    })?;
                table.push(vals.clone());
            }
            if let Some((line, l, _)) = row_entries.iter().find(|(_, l, _)| !rows.contains(l)) {
                return Err(GameError::Parse {
                    line: *line,
                    reason: format!("row {l} is not declared"),
                });
            }
            Ok(GameFile::Matrix(MatrixGame::new(rows, cols, table)?))
        }
        Some(false) => {
            for (line, key, _) in &payoffs {
                if payoffs.iter().filter(|(_, k, _)| k == key).count() > 1 {
                    return Err(GameError::Parse {
                        line: *line,
                        reason: format!("duplicate payoff for {}", key.join(" ")),
                    });
                }
            }
            let sg = SignalingGame::new(types, responses, |t, a, r| {
                payoffs
                    .iter()
                    .find(|(_, k, _)| k[0] == t && k[1] == a && k[2] == r)
                    .map(|(_, _, v)| v.clone())
            })?;
            Ok(GameFile::Signaling(sg))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn rational_display_and_parse() {
        assert_eq!(r(2, -6).to_string(), "-1/3");
        assert_eq!(r(4, 2).to_string(), "2");
        assert_eq!("-1/3".parse::<Rational>().unwrap(), r(-1, 3));
        assert_eq!("5".parse::<Rational>().unwrap(), r(5, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn equity_examples() {
        assert_eq!(equity(&r(3, 10), &r(3, 10), &r(4, 10)).unwrap(), r(-1, 10));
        assert_eq!(equity(&r(0, 1), &r(1, 1), &r(0, 1)).unwrap(), r(0, 1));
        assert_eq!(equity(&r(1, 1), &r(0, 1), &r(0, 1)).unwrap(), r(1, 1));
        assert!(equity(&r(1, 2), &r(1, 2), &r(1, 2)).is_err());
    }

    #[test]
    fn matching_pennies() {
        let g = MatrixGame::from_integers(&[vec![1, -1], vec![-1, 1]]).unwrap();
        let s = solve_matrix(&g);
        assert_eq!(s.value, r(0, 1));
        assert_eq!(s.row.probabilities(), vec![r(1, 2), r(1, 2)]);
        assert_eq!(s.col.probabilities(), vec![r(1, 2), r(1, 2)]);
    }

    #[test]
    fn rock_paper_scissors() {
        let g = MatrixGame::from_integers(&[vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]]).unwrap();
        let s = solve_matrix(&g);
        assert_eq!(s.value, r(0, 1));
        assert!(s.row.probabilities().iter().all(|p| *p == r(1, 3)));
        assert!(s.col.probabilities().iter().all(|p| *p == r(1, 3)));
    }

    #[test]
    fn saddle_point() {
        let g = MatrixGame::from_integers(&[vec![3, 1], vec![2, 0]]).unwrap();
        let s = solve_matrix(&g);
        assert_eq!(s.value, r(1, 1));
        assert_eq!(s.row.support(), vec!["r0"]);
        assert_eq!(s.col.support(), vec!["c1"]);
    }

    #[test]
    fn ragged_matrix_rejected() {
        let e = MatrixGame::new(vec!["a".into(), "b".into()], vec!["x".into()], vec![vec![r(1, 1)], vec![]]);
        assert!(matches!(e, Err(GameError::Ragged { row: 1, .. })));
        assert!(matches!(MatrixGame::from_integers(&[]), Err(GameError::Empty)));
    }

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_type_reduces_to_its_table() {
        let sg = SignalingGame::new(
            vec![HeroType {
                name: "t".into(),
                prior: r(1, 1),
                actions: labels(&["a", "b"]),
            }],
            vec![("a".into(), labels(&["x", "y"])), ("b".into(), labels(&["z"]))],
            |_, a, rr| Some(Rational::from_integer(match (a, rr) {
                ("a", "x") => 1,
                ("a", "y") => -1,
                _ => 0,
            })),
        )
        .unwrap();
        let m = signaling_to_matrix(&sg);
        assert_eq!(m.rows, labels(&["t:a", "t:b"]));
        assert_eq!(m.cols, labels(&["a:x,b:z", "a:y,b:z"]));
        assert_eq!(m.payoffs[0], vec![r(1, 1), r(-1, 1)]);
        assert_eq!(m.payoffs[1], vec![r(0, 1), r(0, 1)]);
    }

    #[test]
    fn dominant_action_gives_prior_posteriors() {
        let sg = SignalingGame::new(
            vec![
                HeroType {
                    name: "p".into(),
                    prior: r(1, 4),
                    actions: labels(&["good", "bad"]),
                },
                HeroType {
                    name: "q".into(),
                    prior: r(3, 4),
                    actions: labels(&["good", "bad"]),
                },
            ],
            vec![("good".into(), labels(&["x", "y"])), ("bad".into(), labels(&["x", "y"]))],
            |_, a, _| Some(Rational::from_integer(if a == "good" { 1 } else { -1 })),
        )
        .unwrap();
        let eq = solve_signaling(&sg);
        assert_eq!(eq.value, r(1, 1));
        for (_, mix) in &eq.hero {
            assert_eq!(mix.get("good"), r(1, 1));
        }
        assert_eq!(eq.posteriors[0].beliefs.get("q"), r(3, 4));
        assert!(eq.posteriors[0].on_path);
        assert!(!eq.posteriors[1].on_path);
        assert_eq!(eq.posteriors[1].beliefs.get("p"), r(1, 4));
    }

    #[test]
    fn off_path_belief_restricted_to_types_with_action() {
        let sg = SignalingGame::new(
            vec![
                HeroType {
                    name: "p".into(),
                    prior: r(1, 2),
                    actions: labels(&["a", "rare"]),
                },
                HeroType {
                    name: "q".into(),
                    prior: r(1, 2),
                    actions: labels(&["a"]),
                },
            ],
            vec![("a".into(), labels(&["x"])), ("rare".into(), labels(&["x"]))],
            |_, a, _| Some(Rational::from_integer(if a == "a" { 1 } else { 0 })),
        )
        .unwrap();
        let eq = solve_signaling(&sg);
        let rare = &eq.posteriors[1];
        assert!(!rare.on_path);
        assert_eq!(rare.beliefs.get("p"), r(1, 1));
        assert_eq!(rare.beliefs.get("q"), r(0, 1));
    }

    #[test]
    fn missing_payoff_rejected() {
        let e = SignalingGame::new(
            vec![HeroType {
                name: "t".into(),
                prior: r(1, 1),
                actions: labels(&["a"]),
            }],
            vec![("a".into(), labels(&["x"]))],
            |_, _, _| None,
        );
        assert!(matches!(e, Err(GameError::InvalidGame(_))));
    }

    #[test]
    fn invalid_strategy_rejected() {
        let sg = SignalingGame::new(
            vec![HeroType {
                name: "t".into(),
                prior: r(1, 1),
                actions: labels(&["a", "b"]),
            }],
            vec![("a".into(), labels(&["x"])), ("b".into(), labels(&["x"]))],
            |_, _, _| Some(r(0, 1)),
        )
        .unwrap();
        let bad = vec![(
            "t".to_string(),
            MixedStrategy {
                entries: vec![("a".into(), r(1, 2)), ("b".into(), r(1, 3))],
            },
        )];
        assert!(best_response_value(&sg, &Fixed::Hero(bad)).is_err());
    }

    #[test]
    fn parse_matrix_file() {
        let g = parse_game("# rps\nmatrix\nrows R P S\ncols R P S\nrow R 0 -1 1\nrow P 1 0 -1\nrow S -1 1 0\n").unwrap();
        let GameFile::Matrix(m) = g else { panic!() };
        assert_eq!(solve_matrix(&m).value, r(0, 1));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_game("matrix\nrows a\ncols x\nrow a 1/0\n").unwrap_err();
        assert!(matches!(e, GameError::Parse { line: 4, .. }));
        assert!(matches!(parse_game("rows a\n"), Err(GameError::Parse { line: 1, .. })));
        assert!(parse_game("").is_err());
        let dup = "signaling\ntype t 1 a\nresponses a x\npayoff t a x 1\npayoff t a x 2\n";
        assert!(matches!(parse_game(dup), Err(GameError::Parse { line: 4, .. })));
    }
}
