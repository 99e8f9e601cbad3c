//! Finite game forms `{L | R}`: the recursive tier.
//!
//! Forms are hash-consed, so structurally identical forms share one node
//! and compare by identity. `leq`, `add`, `neg` and `mul` follow Conway's
//! recursive definitions literally; results are memoized per thread on
//! node identities. Memoization can be switched off with
//! [`with_memo_disabled`] and must never change a result.

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::rational::{self, Rational};

/// A dyadic rational `numerator / 2^exponent` in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: i64,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: i64, exponent: u32) -> Self {
        let mut d = Dyadic { numerator, exponent };
        d.reduce();
        d
    }

    pub fn integer(n: i64) -> Self {
        Dyadic::new(n, 0)
    }

    fn reduce(&mut self) {
        if self.numerator == 0 {
            self.exponent = 0;
            return;
        }
        while self.exponent > 0 && self.numerator % 2 == 0 {
            self.numerator /= 2;
            self.exponent -= 1;
        }
    }

    pub fn numerator(&self) -> i64 {
        self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_integer(&self) -> bool {
        self.exponent == 0
    }

    fn align(a: Dyadic, b: Dyadic) -> (i128, i128, u32) {
        let e = a.exponent.max(b.exponent);
        let x = (a.numerator as i128) << (e - a.exponent);
        let y = (b.numerator as i128) << (e - b.exponent);
        (x, y, e)
    }

    fn from_wide(n: i128, e: u32) -> Self {
        let mut n = n;
        let mut e = e;
        while e > 0 && n % 2 == 0 && n != 0 {
            n /= 2;
            e -= 1;
        }
        if n == 0 {
            e = 0;
        }
        Dyadic {
            numerator: i64::try_from(n).expect("dyadic numerator overflow"),
            exponent: e,
        }
    }

    /// `⌊self⌋`.
    pub fn floor(self) -> i64 {
        self.numerator.div_euclid(1i64 << self.exponent)
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(BigInt::from(self.numerator), BigInt::one() << self.exponent)
    }

    pub fn from_rational(q: &Rational) -> Option<Dyadic> {
        if !rational::is_dyadic(q) {
            return None;
        }
        let exponent = q.denom().bits().saturating_sub(1) as u32;
        let numerator = i64::try_from(q.numer().clone()).ok()?;
        Some(Dyadic::new(numerator, exponent))
    }

    /// Day on which this number is born: `|n|` for integers and
    /// `⌊|d|⌋ + 1 + k` for `d = m / 2^k` with `m` odd and `k ≥ 1`.
    pub fn birthday(self) -> u64 {
        if self.exponent == 0 {
            self.numerator.unsigned_abs()
        } else {
            self.abs().floor() as u64 + 1 + self.exponent as u64
        }
    }

    pub fn abs(self) -> Dyadic {
        if self.numerator < 0 {
            -self
        } else {
            self
        }
    }

    /// The simplest (earliest-born) dyadic strictly between `lo` and `hi`,
    /// where `None` means unbounded on that side.
    pub fn simplest_between(lo: Option<Dyadic>, hi: Option<Dyadic>) -> Dyadic {
        let zero = Dyadic::integer(0);
        if lo.is_none_or(|l| l < zero) && hi.is_none_or(|h| h > zero) {
            return zero;
        }
        if let Some(h) = hi.filter(|h| *h <= zero) {
            // Mirror the problem onto the positive side.
            return -Dyadic::simplest_between(Some(-h), lo.map(|d| -d));
        }
        let l = lo.expect("lower bound present when interval excludes zero");
        let n = Dyadic::integer(l.floor() + 1);
        if hi.is_none_or(|h| n < h) {
            return n;
        }
        let h = hi.expect("upper bound present");
        let mut k = 1u32;
        loop {
            let m = (l.numerator as i128 * (1i128 << k)).div_euclid(1i128 << l.exponent) + 1;
            let cand = Dyadic::from_wide(m, k);
            if cand < h {
                return cand;
            }
            k += 1;
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (x, y, _) = Dyadic::align(*self, *other);
        x.cmp(&y)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add for Dyadic {
    type Output = Dyadic;

    fn add(self, other: Dyadic) -> Dyadic {
        let (x, y, e) = Dyadic::align(self, other);
        Dyadic::from_wide(x + y, e)
    }
}

impl std::ops::Neg for Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: -self.numerator,
            exponent: self.exponent,
        }
    }
}

impl std::ops::Mul for Dyadic {
    type Output = Dyadic;

    fn mul(self, other: Dyadic) -> Dyadic {
        Dyadic::from_wide(
            self.numerator as i128 * other.numerator as i128,
            self.exponent + other.exponent,
        )
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, 1u64 << self.exponent)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

struct GameNode {
    id: u64,
    left: Vec<GameForm>,
    right: Vec<GameForm>,
    value: Dyadic,
    form_birthday: u64,
}

/// A finite surreal number form `{L | R}`.
#[derive(Clone)]
pub struct GameForm(Arc<GameNode>);

type InternKey = (Vec<u64>, Vec<u64>);

fn interner() -> &'static Mutex<HashMap<InternKey, GameForm>> {
    static TABLE: OnceLock<Mutex<HashMap<InternKey, GameForm>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(HashMap::new()))
}

static NEXT_ID: AtomicU64 = AtomicU64::new(0);

impl GameForm {
    /// Interns a form whose option lists are already sorted and
    /// deduplicated by value.
    fn intern(left: Vec<GameForm>, right: Vec<GameForm>) -> GameForm {
        let key: InternKey = (
            left.iter().map(|g| g.0.id).collect(),
            right.iter().map(|g| g.0.id).collect(),
        );
        let mut table = interner().lock().expect("interner poisoned");
        if let Some(g) = table.get(&key) {
            return g.clone();
        }
        let lo = left.last().map(|g| g.value());
        let hi = right.first().map(|g| g.value());
        let value = Dyadic::simplest_between(lo, hi);
        let form_birthday = left
            .iter()
            .chain(&right)
            .map(|g| g.0.form_birthday + 1)
            .max()
            .unwrap_or(0);
        let node = GameNode {
            id: NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed),
            left,
            right,
            value,
            form_birthday,
        };
        let g = GameForm(Arc::new(node));
        table.insert(key, g.clone());
        g
    }

    /// Sorts options by value and keeps the first representative of each
    /// value.
    fn normalize(mut opts: Vec<GameForm>) -> Vec<GameForm> {
        opts.sort_by_key(|g| g.value());
        opts.dedup_by(|b, a| a.value() == b.value());
        opts
    }

    fn raw(left: Vec<GameForm>, right: Vec<GameForm>) -> GameForm {
        GameForm::intern(GameForm::normalize(left), GameForm::normalize(right))
    }

    /// `{L | R}`, checking that no left option is `>=` a right option.
    pub fn new(left: Vec<GameForm>, right: Vec<GameForm>) -> Result<GameForm> {
        for l in &left {
            for r in &right {
                if leq(r, l) {
                    return Err(Error::NotANumber);
                }
            }
        }
        Ok(GameForm::raw(left, right))
    }

    pub fn zero() -> GameForm {
        GameForm::raw(Vec::new(), Vec::new())
    }

    pub fn left(&self) -> &[GameForm] {
        &self.0.left
    }

    pub fn right(&self) -> &[GameForm] {
        &self.0.right
    }

    /// The dyadic this form denotes.
    pub fn value(&self) -> Dyadic {
        self.0.value
    }

    /// `(sup of option form-birthdays) + 1`, i.e. the depth of the form
    /// itself rather than of the number it denotes.
    pub fn form_birthday(&self) -> u64 {
        self.0.form_birthday
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }
}

impl PartialEq for GameForm {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for GameForm {}

impl Hash for GameForm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.id.hash(state);
    }
}

impl fmt::Display for GameForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.left().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "|")?;
        for (i, r) in self.right().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for GameForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (= {})", self.value())
    }
}

#[derive(Default)]
struct Memo {
    leq: HashMap<(u64, u64), bool>,
    add: HashMap<(u64, u64), GameForm>,
    mul: HashMap<(u64, u64), GameForm>,
    neg: HashMap<u64, GameForm>,
}

thread_local! {
    static MEMO: RefCell<Memo> = RefCell::new(Memo::default());
    static MEMO_ENABLED: Cell<bool> = const { Cell::new(true) };
}

fn memo_enabled() -> bool {
    MEMO_ENABLED.with(|m| m.get())
}

/// Runs `f` with memoization switched off on the current thread.
pub fn with_memo_disabled<R>(f: impl FnOnce() -> R) -> R {
    let prev = MEMO_ENABLED.with(|m| m.replace(false));
    let out = f();
    MEMO_ENABLED.with(|m| m.set(prev));
    out
}

/// Drops the current thread's memo tables.
pub fn clear_memo() {
    MEMO.with(|m| *m.borrow_mut() = Memo::default());
}

fn cached<K, V, F>(key: K, table: fn(&mut Memo) -> &mut HashMap<K, V>, compute: F) -> V
where
    K: Hash + Eq,
    V: Clone,
    F: FnOnce() -> V,
{
    if !memo_enabled() {
        return compute();
    }
    if let Some(v) = MEMO.with(|m| table(&mut m.borrow_mut()).get(&key).cloned()) {
        return v;
    }
    let v = compute();
    MEMO.with(|m| table(&mut m.borrow_mut()).insert(key, v.clone()));
    v
}

/// `x ≤ y` iff no `x^L ≥ y` and no `y^R ≤ x`.
pub fn leq(x: &GameForm, y: &GameForm) -> bool {
    cached(
        (x.id(), y.id()),
        |m| &mut m.leq,
        || !x.left().iter().any(|xl| leq(y, xl)) && !y.right().iter().any(|yr| leq(yr, x)),
    )
}

pub fn eq(x: &GameForm, y: &GameForm) -> bool {
    leq(x, y) && leq(y, x)
}

pub fn lt(x: &GameForm, y: &GameForm) -> bool {
    !leq(y, x)
}

pub fn geq(x: &GameForm, y: &GameForm) -> bool {
    leq(y, x)
}

pub fn gt(x: &GameForm, y: &GameForm) -> bool {
    !leq(x, y)
}

pub fn cmp(x: &GameForm, y: &GameForm) -> Ordering {
    match (leq(x, y), leq(y, x)) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        _ => Ordering::Greater,
    }
}

pub fn neg(x: &GameForm) -> GameForm {
    cached(
        x.id(),
        |m| &mut m.neg,
        || {
            let left = x.right().iter().map(neg).collect();
            let right = x.left().iter().map(neg).collect();
            GameForm::raw(left, right)
        },
    )
}

/// `x + y = {x^L + y, x + y^L | x^R + y, x + y^R}`.
pub fn add(x: &GameForm, y: &GameForm) -> GameForm {
    cached(
        (x.id(), y.id()),
        |m| &mut m.add,
        || {
            let left = x
                .left()
                .iter()
                .map(|xl| add(xl, y))
                .chain(y.left().iter().map(|yl| add(x, yl)))
                .collect();
            let right = x
                .right()
                .iter()
                .map(|xr| add(xr, y))
                .chain(y.right().iter().map(|yr| add(x, yr)))
                .collect();
            GameForm::raw(left, right)
        },
    )
}

pub fn sub(x: &GameForm, y: &GameForm) -> GameForm {
    add(x, &neg(y))
}

/// Conway product. Each option is `x^A·y + x·y^B − x^A·y^B` with
/// `(A, B)` ranging over `(L, L), (R, R)` on the left and `(L, R), (R, L)`
/// on the right.
pub fn mul(x: &GameForm, y: &GameForm) -> GameForm {
    cached(
        (x.id(), y.id()),
        |m| &mut m.mul,
        || {
            let term = |xa: &GameForm, yb: &GameForm| sub(&add(&mul(xa, y), &mul(x, yb)), &mul(xa, yb));
            let pairs = |xs: &[GameForm], ys: &[GameForm]| -> Vec<GameForm> {
                xs.iter()
                    .flat_map(|xa| ys.iter().map(move |yb| (xa, yb)))
                    .map(|(xa, yb)| term(xa, yb))
                    .collect()
            };
            let mut left = pairs(x.left(), y.left());
            left.extend(pairs(x.right(), y.right()));
            let mut right = pairs(x.left(), y.right());
            right.extend(pairs(x.right(), y.left()));
            GameForm::raw(left, right)
        },
    )
}

/// The canonical dyadic value of a form.
pub fn simplify(x: &GameForm) -> Dyadic {
    x.value()
}

/// The canonical, birthday-minimal form of a dyadic: `{n−1|}` or `{|n+1}`
/// for integers and `{(m−1)/2^k | (m+1)/2^k}` otherwise.
pub fn from_dyadic(d: Dyadic) -> GameForm {
    if d.is_integer() {
        let n = d.numerator();
        return match n.cmp(&0) {
            Ordering::Equal => GameForm::zero(),
            Ordering::Greater => GameForm::raw(vec![from_dyadic(Dyadic::integer(n - 1))], Vec::new()),
            Ordering::Less => GameForm::raw(Vec::new(), vec![from_dyadic(Dyadic::integer(n + 1))]),
        };
    }
    let lo = Dyadic::new(d.numerator() - 1, d.exponent());
    let hi = Dyadic::new(d.numerator() + 1, d.exponent());
    GameForm::raw(vec![from_dyadic(lo)], vec![from_dyadic(hi)])
}

pub fn from_integer(n: i64) -> GameForm {
    from_dyadic(Dyadic::integer(n))
}

/// Least day on which the number denoted by `x` is born.
pub fn birthday(x: &GameForm) -> Ordinal {
    Ordinal::from(x.value().birthday())
}

/// All values born on or before day `n`, in increasing order.
pub fn enumerate_day(n: u32) -> Vec<Dyadic> {
    let mut day = vec![Dyadic::integer(0)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(2 * day.len() + 1);
        next.push(Dyadic::simplest_between(None, day.first().copied()));
        for w in day.windows(2) {
            next.push(w[0]);
            next.push(Dyadic::simplest_between(Some(w[0]), Some(w[1])));
        }
        next.push(*day.last().expect("nonempty"));
        next.push(Dyadic::simplest_between(day.last().copied(), None));
        day = next;
    }
    day
}

/// Canonical forms of every number born by day `n`.
pub fn day_forms(n: u32) -> Vec<GameForm> {
    enumerate_day(n).into_iter().map(from_dyadic).collect()
}

/// Partial reciprocal produced by iterating the reciprocal option rules.
///
/// Options are kept as exact rationals: `1/x^O` for an option `x^O` is in
/// general not dyadic, so the generated options need not have finite
/// birthday. The number the partial form denotes is still the simplest
/// number in the cut, which is a dyadic.
#[derive(Debug, Clone)]
pub struct ReciprocalEnum {
    pub left: Vec<Rational>,
    pub right: Vec<Rational>,
    pub rounds: u32,
}

impl ReciprocalEnum {
    pub fn max_left(&self) -> Option<&Rational> {
        self.left.iter().max()
    }

    pub fn min_right(&self) -> Option<&Rational> {
        self.right.iter().min()
    }

    /// Width of the bracket `min R − max L`; `None` while one side is empty.
    pub fn width(&self) -> Option<Rational> {
        Some(self.min_right()? - self.max_left()?)
    }

    /// Whether `q` lies strictly inside the bracket.
    pub fn brackets(&self, q: &Rational) -> bool {
        self.max_left().is_none_or(|l| l < q) && self.min_right().is_none_or(|r| q < r)
    }

    /// The number denoted by the partial form, as a canonical game form.
    pub fn to_form(&self) -> GameForm {
        from_dyadic(simplest_in_rational_cut(self.max_left(), self.min_right()))
    }
}

fn simplest_in_rational_cut(lo: Option<&Rational>, hi: Option<&Rational>) -> Dyadic {
    // Tighten the rational cut to dyadic endpoints that preserve the set of
    // dyadics strictly inside it, then reuse the dyadic search.
    let zero = Rational::zero();
    if lo.is_none_or(|l| *l < zero) && hi.is_none_or(|h| *h > zero) {
        return Dyadic::integer(0);
    }
    if let Some(h) = hi.filter(|h| **h <= zero) {
        let nl = -h.clone();
        let nh = lo.map(|l| -l.clone());
        return -simplest_in_rational_cut(Some(&nl), nh.as_ref());
    }
    let l = lo.expect("lower bound present");
    let n = rational::integer_above(l);
    let n_rat = Rational::from_integer(n.clone());
    if hi.is_none_or(|h| n_rat < *h) {
        return Dyadic::integer(i64::try_from(n).expect("integer fits"));
    }
    let h = hi.expect("upper bound present");
    let mut k = 1u32;
    loop {
        let scale = Rational::from_integer(BigInt::one() << k);
        let m = rational::integer_above(&(l * &scale));
        let cand = Rational::new(m.clone(), BigInt::one() << k);
        if cand < *h {
            return Dyadic::from_rational(&cand).expect("dyadic by construction");
        }
        k += 1;
    }
}

/// Iterates the reciprocal option rules for `depth` rounds:
///
/// `y = {0, (1 + (x^R − x) y^L)/x^R, (1 + (x^L − x) y^R)/x^L |
///       (1 + (x^L − x) y^L)/x^L, (1 + (x^R − x) y^R)/x^R}`
///
/// with only positive `x^L` used. Each round applies the rules to the
/// options produced by the previous round.
pub fn reciprocal_enum(x: &GameForm, depth: u32) -> Result<ReciprocalEnum> {
    let xv = x.value().to_rational();
    if !xv.is_positive() {
        return Err(Error::NonPositive);
    }
    let xl: Vec<Rational> = x
        .left()
        .iter()
        .map(|g| g.value().to_rational())
        .filter(|v| v.is_positive())
        .collect();
    let xr: Vec<Rational> = x.right().iter().map(|g| g.value().to_rational()).collect();
    let one = Rational::one();
    let rule = |opt: &Rational, yo: &Rational| (&one + (opt - &xv) * yo) / opt;

    let mut left = vec![Rational::zero()];
    let mut right: Vec<Rational> = Vec::new();
    let (mut new_left, mut new_right) = (left.clone(), Vec::<Rational>::new());
    for _ in 0..depth {
        let mut gen_left = Vec::new();
        let mut gen_right = Vec::new();
        for yl in &new_left {
            gen_left.extend(xr.iter().map(|o| rule(o, yl)));
            gen_right.extend(xl.iter().map(|o| rule(o, yl)));
        }
        for yr in &new_right {
            gen_left.extend(xl.iter().map(|o| rule(o, yr)));
            gen_right.extend(xr.iter().map(|o| rule(o, yr)));
        }
        gen_left.retain(|q| !left.contains(q));
        gen_left.sort();
        gen_left.dedup();
        gen_right.retain(|q| !right.contains(q));
        gen_right.sort();
        gen_right.dedup();
        left.extend(gen_left.iter().cloned());
        right.extend(gen_right.iter().cloned());
        new_left = gen_left;
        new_right = gen_right;
    }
    Ok(ReciprocalEnum {
        left,
        right,
        rounds: depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn d(n: i64, e: u32) -> Dyadic {
        Dyadic::new(n, e)
    }

    #[test]
    fn make_number_examples() {
        let zero = GameForm::new(vec![], vec![]).unwrap();
        assert_eq!(simplify(&zero), d(0, 0));
        let one = GameForm::new(vec![zero.clone()], vec![]).unwrap();
        let half = GameForm::new(vec![zero.clone()], vec![one.clone()]).unwrap();
        assert_eq!(simplify(&half), d(1, 1));
        assert_eq!(GameForm::new(vec![one], vec![zero]), Err(Error::NotANumber));
    }

    #[test]
    fn leq_examples() {
        let zero = GameForm::zero();
        let one = from_integer(1);
        let half = from_dyadic(d(1, 1));
        let minus_one = GameForm::new(vec![], vec![zero.clone()]).unwrap();
        assert!(leq(&zero, &zero));
        assert!(leq(&half, &one));
        assert!(lt(&minus_one, &zero));
        assert!(!lt(&zero, &zero));
    }

    #[test]
    fn arithmetic_examples() {
        let half = from_dyadic(d(1, 1));
        assert_eq!(simplify(&add(&half, &half)), d(1, 0));
        assert_eq!(simplify(&mul(&from_integer(2), &half)), d(1, 0));
        let s = add(&from_dyadic(d(3, 2)), &from_dyadic(d(1, 2)));
        assert_eq!(simplify(&s), d(1, 0));
        for g in day_forms(3) {
            assert_eq!(neg(&neg(&g)), g);
        }
    }

    #[test]
    fn simplify_examples() {
        let zero = GameForm::zero();
        let one = GameForm::new(vec![zero.clone()], vec![]).unwrap();
        assert_eq!(simplify(&one), d(1, 0));
        let m1 = from_integer(-1);
        let p1 = from_integer(1);
        assert_eq!(simplify(&GameForm::new(vec![m1], vec![p1]).unwrap()), d(0, 0));
        for v in enumerate_day(4) {
            assert_eq!(simplify(&from_dyadic(v)), v);
        }
    }

    #[test]
    fn birthday_examples() {
        let zero = GameForm::zero();
        let one = from_integer(1);
        assert_eq!(birthday(&zero), Ordinal::from(0));
        let half = GameForm::new(vec![zero.clone()], vec![one.clone()]).unwrap();
        assert_eq!(birthday(&half), Ordinal::from(2));
        let two = GameForm::new(vec![zero, one], vec![]).unwrap();
        assert_eq!(birthday(&two), Ordinal::from(2));
        for v in enumerate_day(4) {
            assert_eq!(from_dyadic(v).form_birthday(), v.birthday());
        }
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_day(0), vec![d(0, 0)]);
        assert_eq!(enumerate_day(1), vec![d(-1, 0), d(0, 0), d(1, 0)]);
        assert_eq!(enumerate_day(3).len(), 15);
    }

    #[test]
    fn reciprocal_examples() {
        let r2 = reciprocal_enum(&from_integer(2), 2).unwrap();
        assert!(eq(&r2.to_form(), &from_dyadic(d(1, 1))));
        let r1 = reciprocal_enum(&from_integer(1), 1).unwrap();
        assert!(eq(&r1.to_form(), &from_integer(1)));
        let r3 = reciprocal_enum(&from_integer(3), 4).unwrap();
        assert_eq!(r3.left, vec![rat(0, 1), rat(1, 4), rat(5, 16)]);
        assert_eq!(r3.right, vec![rat(1, 2), rat(3, 8)]);
        assert!(r3.brackets(&rat(1, 3)));
        assert_eq!(r3.width(), Some(rat(1, 16)));
        assert_eq!(reciprocal_enum(&GameForm::zero(), 3).unwrap_err(), Error::NonPositive);
    }

    #[test]
    fn memo_is_invisible() {
        let forms = day_forms(2);
        for x in &forms {
            for y in &forms {
                let cached = (leq(x, y), add(x, y), mul(x, y));
                let plain = with_memo_disabled(|| (leq(x, y), add(x, y), mul(x, y)));
                assert_eq!(cached, plain);
            }
        }
    }
}
