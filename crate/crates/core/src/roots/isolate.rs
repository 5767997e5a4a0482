//! Subdivision engine behind zero isolation.
//!
//! Each box carries the multiplicities of exact zeros sitting on its
//! endpoints. If `f^(k)` is bounded away from 0 on a box then, by Rolle, `f`
//! has at most `k` zeros there counting multiplicity; subtracting the known
//! endpoint zeros bounds what can hide inside. One possible zero is decided
//! by a sign test, more by following the monotone derivative `f^(k-1)` to
//! its unique zero and certifying a `k`-fold zero there.

use super::identify::identify;
use super::{poly, vanishes_to_order, Config, Enclosure, Point, RootsError};
use crate::expr::{normalize, Expr};
use crate::oracle::RatPoly;
use crate::rational::simplest_in;
use crate::taylor::{self, series, Coef, Dyadic, Interval, Scalar};
use num_rational::BigRational;
use std::collections::HashMap;
use std::sync::Arc;

/// Boxes examined per attempt before giving up at that precision.
const BOX_BUDGET: usize = 4000;
/// Taylor order tried first on a box.
const FIRST_ORDER: usize = 4;

#[derive(Debug)]
pub(super) struct Failure {
    pub interval: Interval,
    pub reason: String,
}

fn fail(lo: &Dyadic, hi: &Dyadic, reason: &str) -> Failure {
    Failure {
        interval: Interval::new(lo.clone(), hi.clone()),
        reason: reason.to_string(),
    }
}

fn to_undecidable(f: Failure) -> RootsError {
    RootsError::Undecidable {
        interval: f.interval,
        reason: f.reason,
    }
}

/// Isolation over the precision ladder, then factor by factor.
pub(super) fn isolate_checked(
    f: &Expr,
    domain: &Interval,
    cfg: &Config,
) -> Result<Vec<(Point, u32)>, RootsError> {
    let mut last = None;
    for prec in taylor::ladder(cfg.precision, cfg.max_precision) {
        match Engine::new(f, cfg, prec).run(domain) {
            Ok(found) => return Ok(found),
            Err(e) => last = Some(e),
        }
    }
    let factors = f.multiplicative_factors();
    if factors.len() > 1 || factors.iter().any(|(_, k)| *k > 1) {
        if let Ok(found) = factorwise(&factors, domain, cfg) {
            return Ok(found);
        }
    }
    Err(to_undecidable(last.expect("ladder has at least one rung")))
}

/// Zeros of a product as the merged zeros of its factors.
fn factorwise(
    factors: &[(Expr, u32)],
    domain: &Interval,
    cfg: &Config,
) -> Result<Vec<(Point, u32)>, RootsError> {
    let mut merged: Vec<(Point, u32)> = Vec::new();
    for (g, k) in factors {
        let g = normalize(g).map_err(|_| RootsError::NotAnalytic {
            witness: domain.clone(),
        })?;
        if g.as_const().is_some() {
            continue;
        }
        for (p, m) in isolate_checked(&g, domain, cfg)? {
            let mut slot = None;
            for (i, (q, _)) in merged.iter().enumerate() {
                if identify(&p, q, cfg)? {
                    slot = Some(i);
                    break;
                }
            }
            match slot {
                Some(i) => merged[i].1 += m * k,
                None => merged.push((p, m * k)),
            }
        }
    }
    Ok(merged)
}

/// Narrow a certified enclosure at one precision.
pub(super) fn refine_enclosure(
    e: &Enclosure,
    target: &Dyadic,
    prec: u32,
    cfg: &Config,
) -> Result<Point, Failure> {
    let (lo, hi) = (e.interval.lo(), e.interval.hi());
    let m = e.order as usize;
    let mut eng = Engine::new(&e.source, cfg, prec);
    let slope = series::series(&e.source, &e.interval, m, prec)
        .ok()
        .and_then(|c| c[m].strict_sign())
        .ok_or_else(|| fail(lo, hi, "certificate does not hold at this precision"))?;
    match eng.refine_root(m, lo, hi, -slope, target)? {
        Loc::Exact(q) => Ok(Point::Exact(q)),
        Loc::Enclosure(j) => Ok(eng.point_in(j, e.order)),
    }
}

struct Cell {
    lo: Dyadic,
    hi: Dyadic,
    lo_root: u32,
    hi_root: u32,
    depth: u32,
}

enum Action {
    Discard,
    Split,
    Found(Point, u32),
}

/// Where the unique zero of a monotone derivative was pinned down.
enum Loc {
    Exact(BigRational),
    Enclosure(Interval),
}

struct Engine<'a> {
    f: &'a Expr,
    src: Arc<Expr>,
    cfg: &'a Config,
    prec: u32,
    kmax: usize,
    numer: Option<Option<RatPoly>>,
    chains: HashMap<usize, RatPoly>,
    exact: HashMap<Dyadic, Vec<Scalar>>,
    boxes: usize,
}

fn binom(n: usize, k: usize) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i as i64 + 1);
    }
    r
}

impl<'a> Engine<'a> {
    fn new(f: &'a Expr, cfg: &'a Config, prec: u32) -> Engine<'a> {
        Engine {
            f,
            src: Arc::new(f.clone()),
            cfg,
            prec,
            kmax: cfg.mult_cap.clamp(1, 60) as usize,
            numer: None,
            chains: HashMap::new(),
            exact: HashMap::new(),
            boxes: 0,
        }
    }

    fn run(&mut self, domain: &Interval) -> Result<Vec<(Point, u32)>, Failure> {
        let (a, b) = (domain.lo().clone(), domain.hi().clone());
        let undecided = |d: &Dyadic| fail(d, d, "sign at an endpoint is undecidable");
        let ma = self.root_mult(&a)?.ok_or_else(|| undecided(&a))?;
        let mut found = vec![];
        if ma > 0 {
            found.push((Point::Exact(a.to_rational()), ma));
        }
        if a == b {
            return Ok(found);
        }
        let mb = self.root_mult(&b)?.ok_or_else(|| undecided(&b))?;
        if mb > 0 {
            found.push((Point::Exact(b.to_rational()), mb));
        }
        let max_depth = 40 + self.prec / 8;
        let mut stack = vec![Cell {
            lo: a,
            hi: b,
            lo_root: ma,
            hi_root: mb,
            depth: 0,
        }];
        while let Some(c) = stack.pop() {
            self.boxes += 1;
            if self.boxes > BOX_BUDGET {
                return Err(fail(&c.lo, &c.hi, "box budget exhausted"));
            }
            match self.analyze(&c)? {
                Action::Discard => {}
                Action::Found(p, m) => found.push((p, m)),
                Action::Split => {
                    if c.depth >= max_depth {
                        return Err(fail(&c.lo, &c.hi, "subdivision depth exhausted"));
                    }
                    let (s, ms) = self.split_point(&c)?;
                    if ms > 0 {
                        found.push((Point::Exact(s.to_rational()), ms));
                    }
                    stack.push(Cell {
                        lo: s.clone(),
                        hi: c.hi.clone(),
                        lo_root: ms,
                        hi_root: c.hi_root,
                        depth: c.depth + 1,
                    });
                    stack.push(Cell {
                        lo: c.lo,
                        hi: s,
                        lo_root: c.lo_root,
                        hi_root: ms,
                        depth: c.depth + 1,
                    });
                }
            }
        }
        self.separate(found)
    }

    /// Exact-lane coefficients `c_0..=c_n` at a dyadic point.
    fn coeffs_at(&mut self, d: &Dyadic, n: usize) -> Result<Vec<Scalar>, Failure> {
        let have = self.exact.get(d).map_or(0, Vec::len);
        if have <= n {
            let order = n.max(2 * have).max(FIRST_ORDER).min(self.kmax.max(n));
            let v = super::exact_coeffs(self.f, &d.to_rational(), order, self.prec)
                .map_err(|_| fail(d, d, "denominator not bounded away from 0"))?;
            self.exact.insert(d.clone(), v);
        }
        Ok(self.exact[d][..=n].to_vec())
    }

    /// `Some(0)` if `f(d) != 0`, `Some(m)` for a certified zero of
    /// multiplicity `m`, `None` if the sign of `f(d)` is undecided.
    fn root_mult(&mut self, d: &Dyadic) -> Result<Option<u32>, Failure> {
        match self.coeffs_at(d, 0)?[0].sign(self.prec) {
            Some(0) => {}
            Some(_) => return Ok(Some(0)),
            None => return Ok(None),
        }
        for j in 1..=self.kmax {
            match self.coeffs_at(d, j)?[j].sign(self.prec) {
                Some(0) => {}
                Some(_) => return Ok(Some(j as u32)),
                None => return Err(fail(d, d, "multiplicity of an exact zero is undecidable")),
            }
        }
        Err(fail(d, d, "zero exceeds the multiplicity cap"))
    }

    /// Sign of `f` just to the right (or left) of `d`, where `f` has a zero
    /// of multiplicity `mult` (possibly 0).
    fn side_sign(&mut self, d: &Dyadic, mult: u32, right: bool) -> Result<Option<i32>, Failure> {
        let m = mult as usize;
        let s = self.coeffs_at(d, m)?[m].sign(self.prec);
        Ok(s.map(|s| if !right && mult % 2 == 1 { -s } else { s }))
    }

    /// `D[j]` encloses `f^(j)/j!` over the box: the centered Taylor form at
    /// the midpoint intersected with the natural enclosure.
    fn bounds(
        &mut self,
        lo: &Dyadic,
        hi: &Dyadic,
        k: usize,
    ) -> Result<Option<Vec<Interval>>, Failure> {
        let prec = self.prec;
        let x = Interval::new(lo.clone(), hi.clone());
        let Ok(over) = series::series(self.f, &x, k, prec) else {
            return Ok(None);
        };
        let m = Dyadic::midpoint(lo, hi);
        let at_mid: Vec<Interval> = self
            .coeffs_at(&m, k)?
            .iter()
            .map(|s| s.enclosure(prec))
            .collect();
        let h = x.sub(&Interval::point(m), prec);
        let hp: Vec<Interval> = (0..=k as u32).map(|i| h.powi(i, prec)).collect();
        let mut out = Vec::with_capacity(k + 1);
        for j in 0..=k {
            let r = k - j;
            let mut acc = over[k]
                .mul(&hp[r], prec)
                .mul(&Interval::from_i64(binom(k, j)), prec);
            for i in 0..r {
                if at_mid[j + i].is_exact_zero() {
                    continue;
                }
                let t = at_mid[j + i]
                    .mul(&hp[i], prec)
                    .mul(&Interval::from_i64(binom(j + i, i)), prec);
                acc = acc.add(&t, prec);
            }
            out.push(acc.intersect(&over[j]).unwrap_or_else(|| over[j].clone()));
        }
        Ok(Some(out))
    }

    fn analyze(&mut self, c: &Cell) -> Result<Action, Failure> {
        let tiny = Dyadic::pow2(-10);
        let wide = c.hi.sub_exact(&c.lo) >= tiny;
        let mut order = FIRST_ORDER.min(self.kmax);
        let k = loop {
            let Some(d) = self.bounds(&c.lo, &c.hi, order)? else {
                return Ok(Action::Split);
            };
            match d.iter().position(Interval::excludes_zero) {
                Some(k) => break k,
                None if order < self.kmax && !wide => order = self.kmax,
                None => return Ok(Action::Split),
            }
        };
        let room = k as i64 - c.lo_root as i64 - c.hi_root as i64;
        if room <= 0 {
            return Ok(Action::Discard);
        }
        if room == 1 {
            return self.single(c);
        }
        if c.lo_root > 0 || c.hi_root > 0 {
            return Ok(Action::Split);
        }
        self.cluster(c, k)
    }

    /// At most one zero inside, necessarily simple: decide it by signs.
    fn single(&mut self, c: &Cell) -> Result<Action, Failure> {
        let sa = self.side_sign(&c.lo, c.lo_root, true)?;
        let sb = self.side_sign(&c.hi, c.hi_root, false)?;
        match (sa, sb) {
            (Some(x), Some(y)) if x != 0 && y != 0 => {
                if x == y {
                    return Ok(Action::Discard);
                }
                let tol = self.cfg.tolerance.clone();
                let p = match self.refine_root(1, &c.lo, &c.hi, x, &tol)? {
                    Loc::Exact(q) => Point::Exact(q),
                    Loc::Enclosure(j) => self.point_in(j, 1),
                };
                Ok(Action::Found(p, 1))
            }
            _ => Ok(Action::Split),
        }
    }

    /// No endpoint zeros and `f^(k) != 0` with `k >= 2`.
    fn cluster(&mut self, c: &Cell, k: usize) -> Result<Action, Failure> {
        let mut k = k;
        let sa = loop {
            if k == 0 {
                return Ok(Action::Discard);
            }
            let a = self.coeffs_at(&c.lo, k - 1)?[k - 1].sign(self.prec);
            let b = self.coeffs_at(&c.hi, k - 1)?[k - 1].sign(self.prec);
            match (a, b) {
                // f^(k-1) is monotone, so it keeps one sign on the whole box
                (Some(x), Some(y)) if x != 0 && x == y => k -= 1,
                (Some(x), Some(y)) if x != 0 && y != 0 => break x,
                _ => return Ok(Action::Split),
            }
        };
        if k == 1 {
            return self.single(c);
        }
        // f^(k-1) has one simple zero here; f has a k-fold zero iff it is there
        let coarse = c.hi.sub_exact(&c.lo).mul_pow2(-12);
        let j0 = match self.refine_root(k, &c.lo, &c.hi, sa, &coarse)? {
            Loc::Exact(q) => Interval::from_rational(&q, self.prec),
            Loc::Enclosure(j) => j,
        };
        if series::series(self.f, &j0, 0, self.prec).is_ok_and(|v| v[0].excludes_zero()) {
            return Ok(Action::Split);
        }
        let certified = self.poly_certifies(c, k);
        let tol = self.cfg.tolerance.clone();
        let (lo, hi) = (j0.lo().clone(), j0.hi().clone());
        let loc = self.refine_root(k, &lo, &hi, sa, &tol)?;
        let (q, j) = match loc {
            Loc::Exact(q) => (q, None),
            Loc::Enclosure(j) => {
                let (l, h) = j.to_rational_bounds();
                (simplest_in(&l, &h), Some(j))
            }
        };
        if vanishes_to_order(self.f, &q, k as u32, self.prec) == Some(true) {
            return Ok(Action::Found(Point::Exact(q), k as u32));
        }
        match (certified, j) {
            (true, Some(j)) => Ok(Action::Found(
                Point::Enclosure(Enclosure {
                    interval: j,
                    source: self.src.clone(),
                    order: k as u32,
                }),
                k as u32,
            )),
            _ => Ok(Action::Split),
        }
    }

    /// For a rational function: does `gcd(P, ..., P^(k-1))` of the numerator
    /// change sign across the box? Then a zero of multiplicity `>= k` lies
    /// inside, and `f^(k) != 0` caps it at exactly `k`.
    fn poly_certifies(&mut self, c: &Cell, k: usize) -> bool {
        if self.numer.is_none() {
            self.numer = Some(poly::rational_parts(self.f).map(|(n, _)| n));
        }
        let Some(Some(p)) = &self.numer else {
            return false;
        };
        if p.is_zero() {
            return false;
        }
        let p = p.clone();
        let g = self
            .chains
            .entry(k)
            .or_insert_with(|| poly::squarefree(&poly::gcd_chain(&p, k as u32)));
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let sa = poly::sign_at(g, &c.lo.to_rational());
        let sb = poly::sign_at(g, &c.hi.to_rational());
        sa * sb < 0
    }

    /// Point for the zero of order `m` known to lie in `j`: exact if the
    /// simplest rational in `j` vanishes to order `m`.
    fn point_in(&mut self, j: Interval, m: u32) -> Point {
        let (l, h) = j.to_rational_bounds();
        let q = simplest_in(&l, &h);
        if vanishes_to_order(self.f, &q, m, self.prec) == Some(true) {
            return Point::Exact(q);
        }
        Point::Enclosure(Enclosure {
            interval: j,
            source: self.src.clone(),
            order: m,
        })
    }

    /// Narrow the unique zero of `W = f^(m-1)` in `(lo, hi)`, where `W` has
    /// sign `s_lo` left of it. Interval Newton while `f^(m)` is bounded away
    /// from 0, bisection otherwise; stops once the width is at most `target`
    /// and the certificate `f^(m) != 0` holds.
    fn refine_root(
        &mut self,
        m: usize,
        lo: &Dyadic,
        hi: &Dyadic,
        s_lo: i32,
        target: &Dyadic,
    ) -> Result<Loc, Failure> {
        let target_bits = (-target.floor_log2().unwrap_or(0)).max(0) as u32;
        let cap = self.cfg.max_precision.max(self.prec);
        let mut wprec = self
            .prec
            .max(target_bits + 32)
            .min(cap.max(target_bits + 32));
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        let mut steps = 0;
        loop {
            steps += 1;
            if steps > 8 * target_bits as usize + 400 {
                return Err(fail(&lo, &hi, "refinement did not converge"));
            }
            let x = Interval::new(lo.clone(), hi.clone());
            let slope = series::series(self.f, &x, m, wprec)
                .ok()
                .map(|c| c[m].clone())
                .filter(Interval::excludes_zero);
            if &x.width() <= target && slope.is_some() {
                return Ok(Loc::Enclosure(x));
            }
            let mid = Dyadic::midpoint(&lo, &hi);
            let w = taylor::taylor_coeffs_exact(self.f, &mid.to_rational(), m - 1, wprec)
                .map_err(|_| fail(&lo, &hi, "denominator not bounded away from 0"))?
                .swap_remove(m - 1);
            let s = w.sign(wprec);
            if s == Some(0) {
                return Ok(Loc::Exact(mid.to_rational()));
            }
            if let Some(d) = &slope {
                let step = w
                    .enclosure(wprec)
                    .div(&d.mul(&Interval::from_i64(m as i64), wprec), wprec)
                    .expect("slope excludes zero");
                let n = Interval::point(mid.clone()).sub(&step, wprec);
                match x.intersect(&n) {
                    Some(nx) if nx.width().mul_pow2(1) <= x.width() => {
                        lo = nx.lo().clone();
                        hi = nx.hi().clone();
                        continue;
                    }
                    Some(_) => {}
                    None => return Err(fail(&lo, &hi, "Newton step left the enclosure")),
                }
            }
            match s {
                Some(s) if s == s_lo => lo = mid,
                Some(_) => hi = mid,
                None if wprec < 4 * cap => wprec *= 2,
                None => return Err(fail(&lo, &hi, "sign undecidable during refinement")),
            }
        }
    }

    /// A split point near the middle whose sign is decidable.
    fn split_point(&mut self, c: &Cell) -> Result<(Dyadic, u32), Failure> {
        let w = c.hi.sub_exact(&c.lo);
        for sixteenths in [8, 7, 9, 6, 10, 5, 11] {
            let s =
                c.lo.add_exact(&w.mul_exact(&Dyadic::new(sixteenths.into(), -4)));
            if let Some(m) = self.root_mult(&s)? {
                return Ok((s, m));
            }
        }
        Err(fail(&c.lo, &c.hi, "no split point with a decidable sign"))
    }

    /// Refine enclosures until no two entries overlap and no enclosure
    /// contains another entry's exact value.
    fn separate(&mut self, mut found: Vec<(Point, u32)>) -> Result<Vec<(Point, u32)>, Failure> {
        for _ in 0..8 {
            found.sort_by_key(|a| a.0.lo());
            let mut bad = vec![false; found.len()];
            for i in 0..found.len() {
                for j in i + 1..found.len() {
                    if found[j].0.lo() <= found[i].0.hi() {
                        bad[i] = true;
                        bad[j] = true;
                    }
                }
            }
            if !bad.contains(&true) {
                return Ok(found);
            }
            for (i, entry) in found.iter_mut().enumerate() {
                if let (true, Point::Enclosure(e)) = (bad[i], &entry.0) {
                    let target = e.interval.width().mul_pow2(-16);
                    entry.0 = refine_enclosure(e, &target, self.prec, self.cfg)?;
                }
            }
        }
        let (lo, hi) = (found[0].0.lo(), found[found.len() - 1].0.hi());
        Err(Failure {
            interval: Interval::from_rational_bounds(&lo, &hi, self.prec),
            reason: "zeros could not be separated".into(),
        })
    }
}
