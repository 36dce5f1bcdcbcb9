use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ModelGraph;
use crate::error::{Error, Result};
use crate::poly::MPoly;

/// Largest graph the configuration enumerator accepts.
pub const MAX_CONFIG_VERTICES: usize = 16;

/// Directed even loops plus isolated vertices, together covering every
/// vertex once. A two-vertex loop is a doubled edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LoopConfig {
    pub loops: Vec<Vec<usize>>,
    pub isolated: Vec<usize>,
}

fn check_cap(g: &ModelGraph) -> Result<()> {
    if g.n() > MAX_CONFIG_VERTICES {
        return Err(Error::SizeCap {
            what: "vertex count",
            actual: g.n(),
            limit: MAX_CONFIG_VERTICES,
            hint: "use the determinant path instead",
        });
    }
    Ok(())
}

struct Walker<'a, F> {
    g: &'a ModelGraph,
    cfg: LoopConfig,
    visit: F,
    count: u64,
}

impl<F: FnMut(&LoopConfig)> Walker<'_, F> {
    fn cover(&mut self, covered: u32) {
        let full = if self.g.n() == 32 { u32::MAX } else { (1u32 << self.g.n()) - 1 };
        if covered == full {
            (self.visit)(&self.cfg);
            self.count += 1;
            return;
        }
        let v = (!covered).trailing_zeros() as usize;
        self.cfg.isolated.push(v);
        self.cover(covered | 1 << v);
        self.cfg.isolated.pop();
        for &(w, _) in self.g.neighbors(v) {
            if covered & (1 << w) == 0 {
                self.cfg.loops.push(vec![v, w]);
                self.cover(covered | 1 << v | 1 << w);
                self.cfg.loops.pop();
            }
        }
        let mut path = vec![v];
        self.grow(&mut path, covered | 1 << v);
    }

    fn grow(&mut self, path: &mut Vec<usize>, covered: u32) {
        let last = *path.last().expect("path starts at a vertex");
        let start = path[0];
        for &(w, _) in self.g.neighbors(last) {
            if w == start {
                if path.len() >= 4 && path.len().is_multiple_of(2) {
                    self.cfg.loops.push(path.clone());
                    self.cover(covered);
                    self.cfg.loops.pop();
                }
            } else if covered & (1 << w) == 0 {
                path.push(w);
                self.grow(path, covered | 1 << w);
                path.pop();
            }
        }
    }
}

/// Calls `visit` once per loop-vertex configuration and returns how many
/// there were. Loops of length four or more appear in both directions.
pub fn enumerate_configs<F: FnMut(&LoopConfig)>(g: &ModelGraph, visit: F) -> Result<u64> {
    check_cap(g)?;
    let mut w = Walker {
        g,
        cfg: LoopConfig::default(),
        visit,
        count: 0,
    };
    w.cover(0);
    Ok(w.count)
}

pub fn collect_configs(g: &ModelGraph) -> Result<Vec<LoopConfig>> {
    let mut out = Vec::new();
    enumerate_configs(g, |c| out.push(c.clone()))?;
    Ok(out)
}

/// Every directed even loop: doubled edges once (lower endpoint first),
/// longer loops once per direction, starting at their smallest vertex.
pub fn directed_even_loops(g: &ModelGraph) -> Result<Vec<Vec<usize>>> {
    check_cap(g)?;
    let mut out = Vec::new();
    for &(u, v) in g.edges() {
        out.push(vec![u.min(v), u.max(v)]);
    }
    fn grow(g: &ModelGraph, path: &mut Vec<usize>, used: u32, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().expect("nonempty path");
        let start = path[0];
        for &(w, _) in g.neighbors(last) {
            if w == start {
                if path.len() >= 4 && path.len().is_multiple_of(2) {
                    out.push(path.clone());
                }
            } else if w > start && used & (1 << w) == 0 {
                path.push(w);
                grow(g, path, used | 1 << w, out);
                path.pop();
            }
        }
    }
    for s in 0..g.n() {
        grow(g, &mut vec![s], 1 << s, &mut out);
    }
    Ok(out)
}

/// Monomial weights over a shared universe, when every weight is one term
/// with a machine-size coefficient.
struct MonomialWeights {
    vertex: Vec<(i64, Vec<u32>)>,
    edge: Vec<(i64, Vec<u32>)>,
}

impl MonomialWeights {
    fn new(g: &ModelGraph, vars: &std::sync::Arc<[String]>) -> Option<Self> {
        let conv = |p: &MPoly| -> Option<(i64, Vec<u32>)> {
            let p = p.with_vars(vars);
            let (m, c) = p.as_term()?;
            Some((c.to_i64()?, m.exponents().to_vec()))
        };
        let vertex = (0..g.n()).map(|v| conv(g.vertex_weight(v))).collect::<Option<_>>()?;
        let edge = (0..g.edges().len())
            .map(|e| conv(g.edge_weight(e)))
            .collect::<Option<_>>()?;
        Some(MonomialWeights { vertex, edge })
    }
}

fn absorb(exps: &mut [u32], coef: &mut Option<i128>, c: i64, e: &[u32]) {
    *coef = coef.and_then(|k| k.checked_mul(c as i128));
    for (a, b) in exps.iter_mut().zip(e) {
        *a += b;
    }
}

/// Sum of configuration weights.
pub fn partition_bruteforce(g: &ModelGraph) -> Result<MPoly> {
    check_cap(g)?;
    let vars = g.universe();
    if let Some(mw) = MonomialWeights::new(g, &vars) {
        let nv = vars.len();
        let mut acc: HashMap<Vec<u32>, i128> = HashMap::new();
        let mut overflow = false;
        enumerate_configs(g, |cfg| {
            let mut exps = vec![0u32; nv];
            let mut coef = Some(1i128);
            for &v in &cfg.isolated {
                let (c, e) = &mw.vertex[v];
                absorb(&mut exps, &mut coef, *c, e);
            }
            for lp in &cfg.loops {
                let mut sign = -1i64;
                for j in 0..lp.len() {
                    let (u, v) = (lp[j], lp[(j + 1) % lp.len()]);
                    let e = g.edge_between(u, v).expect("configuration steps along edges");
                    sign *= g.orientation().sign(e, u) as i64;
                    let (c, ex) = &mw.edge[e];
                    absorb(&mut exps, &mut coef, *c, ex);
                }
                absorb(&mut exps, &mut coef, sign, &[]);
            }
            let slot = acc.entry(exps).or_insert(0);
            match coef.and_then(|c| slot.checked_add(c)) {
                Some(s) => *slot = s,
                None => overflow = true,
            }
        })?;
        if !overflow {
            return Ok(MPoly::from_exponent_terms(
                vars,
                acc.into_iter().map(|(e, c)| (e, BigInt::from(c))),
            )
            .trimmed());
        }
    }
    let mut total = MPoly::zero();
    let mut err = None;
    enumerate_configs(g, |cfg| {
        let mut w = MPoly::one();
        for &v in &cfg.isolated {
            w = w.mul(g.vertex_weight(v));
        }
        for lp in &cfg.loops {
            match g.loop_weight(lp) {
                Ok(lw) => w = w.mul(&lw),
                Err(e) => err = Some(e),
            }
        }
        total = total.add(&w);
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(total.trimmed()),
    }
}
