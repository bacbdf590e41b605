use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{specialized_residual, specialized_residual_i128};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, LatticeType, SurfaceModel};
use crate::riemann_roch::euler_characteristic;

pub const CERTIFICATE_SCHEMA: &str = "fakequad/certificate/v1";

/// A surface in `P⁴` that is not contained in a hyperplane has
/// `h⁰(O(D)) < C(4, 2) = 6`.
pub const ZAK_H0_BOUND: i64 = 6;

pub const DEFAULT_BOX_BOUND: u64 = 10_000;
pub const MIN_BOX_BOUND: u64 = 100;
/// Keeps the i128 sweep kernel overflow-free.
pub const MAX_BOX_BOUND: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorPair {
    pub s: i64,
    pub t: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionEntry {
    pub class: DivisorClass,
    #[serde(with = "crate::json::int")]
    pub chi: BigInt,
    #[serde(with = "crate::json::int")]
    pub residual: BigInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<FactorPair>,
}

/// The residual restricted to a line, as a primitive quadratic
/// `a·t² + b·t + c` in the line parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCase {
    pub constraint: String,
    pub parameter: String,
    /// `[a, b, c]` after dividing out `content`.
    #[serde(with = "crate::json::int_vec")]
    pub coefficients: Vec<BigInt>,
    #[serde(with = "crate::json::int")]
    pub content: BigInt,
    #[serde(with = "crate::json::int")]
    pub discriminant: BigInt,
    pub is_perfect_square: bool,
    #[serde(with = "crate::json::int_vec")]
    pub integer_roots: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub classes_examined: u64,
    pub zero_residual_hits: Vec<DivisorClass>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    #[serde(rename = "no solution")]
    NoSolution,
    #[serde(rename = "solution found")]
    SolutionFound,
}

impl Conclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            Conclusion::NoSolution => "no solution",
            Conclusion::SolutionFound => "solution found",
        }
    }
}

/// Auditable record that no ample class satisfies the double point formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub model: LatticeType,
    pub equation_id: String,
    pub equation: String,
    /// `D ≡ K` sits outside the `h⁰` bound and is checked on its own.
    pub exceptional_class: RegionEntry,
    pub finite_region_rule: String,
    pub finite_region: Vec<RegionEntry>,
    /// Factor pairs `(s, t)` with no integral class (odd model only).
    pub skipped_factor_pairs: Vec<FactorPair>,
    pub edge_cases: Vec<EdgeCase>,
    pub search_box: u64,
    pub sweep: SweepSummary,
    pub exhaustive_box_clean: bool,
    pub conclusion: Conclusion,
}

struct Line {
    constraint: &'static str,
    parameter: &'static str,
    base: (i64, i64),
    direction: (i64, i64),
}

fn edge_lines(lattice: LatticeType) -> Vec<Line> {
    match lattice {
        // y = 1, 2 give the same quadratics in x: the even equation is
        // symmetric under x <-> y.
        LatticeType::Even => vec![
            Line {
                constraint: "x = 1 (y = 1 by symmetry)",
                parameter: "y",
                base: (1, 0),
                direction: (0, 1),
            },
            Line {
                constraint: "x = 2 (y = 2 by symmetry)",
                parameter: "y",
                base: (2, 0),
                direction: (0, 1),
            },
        ],
        LatticeType::Odd => vec![
            Line {
                constraint: "x + y = 1",
                parameter: "x",
                base: (0, 1),
                direction: (1, -1),
            },
            Line {
                constraint: "x - y = 1",
                parameter: "x",
                base: (0, -1),
                direction: (1, 1),
            },
            Line {
                constraint: "x - y = 2",
                parameter: "x",
                base: (0, -2),
                direction: (1, 1),
            },
        ],
    }
}

fn point_on(line: &Line, t: i64) -> DivisorClass {
    DivisorClass::new(
        line.base.0 + t * line.direction.0,
        line.base.1 + t * line.direction.1,
    )
}

/// Recovers the residual along `line` as a quadratic by interpolating at
/// `t = 0, 1, 2`. The residual has total degree 4, so agreement at
/// `t = 3, 4` as well proves the restriction really is that quadratic.
fn reduce_along(model: &SurfaceModel, line: &Line) -> Result<EdgeCase> {
    let f: Vec<BigInt> = (0..=4)
        .map(|t| specialized_residual(model, &point_on(line, t)))
        .collect();
    let two = BigInt::from(2);
    let second: BigInt = &f[2] - &f[1] * 2 + &f[0];
    let (a, rem) = second.div_rem(&two);
    let degree_fault = || Error::DegreeFault {
        constraint: line.constraint.to_string(),
    };
    if !rem.is_zero() {
        return Err(degree_fault());
    }
    let b = &f[1] - &f[0] - &a;
    let c = f[0].clone();
    for (t, value) in f.iter().enumerate() {
        let t = BigInt::from(t);
        if &a * &t * &t + &b * &t + &c != *value {
            return Err(degree_fault());
        }
    }

    let mut content = a.gcd(&b).gcd(&c);
    if a.is_negative() {
        content = -content;
    }
    let (a, b, c) = (&a / &content, &b / &content, &c / &content);
    let discriminant: BigInt = &b * &b - &a * &c * 4;
    let root = (!discriminant.is_negative()).then(|| discriminant.sqrt());
    let is_perfect_square = root.as_ref().is_some_and(|r| r * r == discriminant);

    let mut integer_roots = Vec::new();
    if let (true, Some(r)) = (is_perfect_square, root) {
        let denom: BigInt = &a * 2;
        for num in [-&b + &r, -&b - &r] {
            if !denom.is_zero() && num.is_multiple_of(&denom) {
                integer_roots.push(num / &denom);
            }
        }
        integer_roots.sort();
        integer_roots.dedup();
    }

    Ok(EdgeCase {
        constraint: line.constraint.to_string(),
        parameter: line.parameter.to_string(),
        coefficients: vec![a, b, c],
        content,
        discriminant,
        is_perfect_square,
        integer_roots,
    })
}

fn region_entry(
    model: &SurfaceModel,
    class: DivisorClass,
    factors: Option<FactorPair>,
) -> Result<RegionEntry> {
    Ok(RegionEntry {
        chi: euler_characteristic(model, &class)?,
        residual: specialized_residual(model, &class),
        class,
        factors,
    })
}

/// Ample classes where `h⁰ = χ` is known and `χ < 6`.
fn finite_region(model: &SurfaceModel) -> Result<(String, Vec<RegionEntry>, Vec<FactorPair>)> {
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    let rule = match model.lattice() {
        // x, y ≥ 3 and (x-1)(y-1) < 6; u = x-1, v = y-1.
        LatticeType::Even => {
            let mut u = 2;
            while u * 2 < ZAK_H0_BOUND {
                let mut v = 2;
                while u * v < ZAK_H0_BOUND {
                    entries.push(region_entry(model, DivisorClass::new(u + 1, v + 1), None)?);
                    v += 1;
                }
                u += 1;
            }
            format!("x >= 3, y >= 3, (x-1)(y-1) < {ZAK_H0_BOUND}")
        }
        // s = x+y-1 ≥ 1, t = x-y-2 ≥ 1 and χ = st/2 < 6, i.e. st ≤ 10.
        // x = (s+t+3)/2 is integral iff s+t is odd.
        LatticeType::Odd => {
            let limit = 2 * (ZAK_H0_BOUND - 1);
            for s in 1..=limit {
                for t in (1..=limit).take_while(|t| s * t <= limit) {
                    let pair = FactorPair { s, t };
                    if (s + t) % 2 == 0 {
                        skipped.push(pair);
                        continue;
                    }
                    let class = DivisorClass::new((s + t + 3) / 2, (s - t - 1) / 2);
                    entries.push(region_entry(model, class, Some(pair))?);
                }
            }
            format!("x + y > 1, x - y > 2, (x+y-1)(x-y-2) <= {limit}")
        }
    };
    entries.sort_by(|a, b| a.class.cmp(&b.class));
    Ok((rule, entries, skipped))
}

/// Brute-force check of every ample class with `1 ≤ x ≤ bound` (and
/// `y ≤ bound` on the even model). Rows are searched in parallel and
/// collected in order, so the output does not depend on scheduling.
fn sweep(lattice: LatticeType, bound: u64) -> SweepSummary {
    let bound = bound as i64;
    let rows: Vec<(u64, Vec<DivisorClass>)> = (1..=bound)
        .into_par_iter()
        .map(|x| {
            let (lo, hi) = match lattice {
                LatticeType::Even => (1, bound),
                LatticeType::Odd => (1 - x, x - 1),
            };
            let hits = (lo..=hi)
                .filter(|&y| specialized_residual_i128(lattice, x as i128, y as i128) == 0)
                .map(|y| DivisorClass::new(x, y))
                .collect();
            ((hi - lo + 1) as u64, hits)
        })
        .collect();
    let classes_examined = rows.iter().map(|(n, _)| n).sum();
    let zero_residual_hits = rows.into_iter().flat_map(|(_, hits)| hits).collect();
    SweepSummary {
        classes_examined,
        zero_residual_hits,
    }
}

pub fn verify_no_p4_embedding(model: &SurfaceModel, box_bound: u64) -> Result<Certificate> {
    if !(MIN_BOX_BOUND..=MAX_BOX_BOUND).contains(&box_bound) {
        return Err(Error::OutOfRange {
            name: "box_bound",
            value: box_bound.to_string(),
            expected: "100 <= box_bound <= 1000000",
        });
    }
    let lattice = model.lattice();
    let (equation_id, equation) = match lattice {
        LatticeType::Even => (
            "double-point-even",
            "2x^2y^2 - 10xy - 5x - 5y - 2 = 0, x > 0, y > 0",
        ),
        LatticeType::Odd => (
            "double-point-odd",
            "(x^2 - y^2 - 5)^2 = 5(3x + y) + 29, x > |y|",
        ),
    };

    let exceptional_class = region_entry(model, model.canonical().clone(), None)?;
    let (finite_region_rule, finite_region, skipped_factor_pairs) = finite_region(model)?;
    let edge_cases = edge_lines(lattice)
        .iter()
        .map(|line| reduce_along(model, line))
        .collect::<Result<Vec<_>>>()?;
    let sweep = sweep(lattice, box_bound);
    let exhaustive_box_clean = sweep.zero_residual_hits.is_empty();

    let clean = !exceptional_class.residual.is_zero()
        && finite_region.iter().all(|e| !e.residual.is_zero())
        && edge_cases.iter().all(|e| !e.is_perfect_square)
        && exhaustive_box_clean;

    Ok(Certificate {
        schema: CERTIFICATE_SCHEMA.to_string(),
        model: lattice,
        equation_id: equation_id.to_string(),
        equation: equation.to_string(),
        exceptional_class,
        finite_region_rule,
        finite_region,
        skipped_factor_pairs,
        edge_cases,
        search_box: box_bound,
        sweep,
        exhaustive_box_clean,
        conclusion: if clean {
            Conclusion::NoSolution
        } else {
            Conclusion::SolutionFound
        },
    })
}

fn format_quadratic(coefficients: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (i, (coeff, power)) in coefficients.iter().zip([2, 1, 0]).enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let magnitude = coeff.abs();
        let sign = if coeff.is_negative() { "-" } else { "+" };
        if i == 0 || out.is_empty() {
            if coeff.is_negative() {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        let show_coeff = power == 0 || magnitude != BigInt::from(1);
        if show_coeff {
            let _ = write!(out, "{magnitude}");
        }
        match power {
            2 => {
                let _ = write!(out, "{var}^2");
            }
            1 => out.push_str(var),
            _ => {}
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl Certificate {
    /// Stable plain-text rendering for diffing.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let entry = |e: &RegionEntry| {
            let factors = e
                .factors
                .map(|f| format!(" (s, t) = ({}, {})", f.s, f.t))
                .unwrap_or_default();
            format!(
                "{} chi={} residual={}{}",
                e.class, e.chi, e.residual, factors
            )
        };
        let _ = writeln!(out, "schema: {}", self.schema);
        let _ = writeln!(out, "model: {}", self.model);
        let _ = writeln!(out, "equation [{}]: {}", self.equation_id, self.equation);
        let _ = writeln!(
            out,
            "exceptional class K: {}",
            entry(&self.exceptional_class)
        );
        let _ = writeln!(out, "finite region: {}", self.finite_region_rule);
        for e in &self.finite_region {
            let _ = writeln!(out, "  {}", entry(e));
        }
        if !self.skipped_factor_pairs.is_empty() {
            let pairs: Vec<String> = self
                .skipped_factor_pairs
                .iter()
                .map(|p| format!("({}, {})", p.s, p.t))
                .collect();
            let _ = writeln!(
                out,
                "  skipped (s + t even, no integral class): {}",
                pairs.join(" ")
            );
        }
        let _ = writeln!(out, "edge cases:");
        for e in &self.edge_cases {
            let _ = writeln!(
                out,
                "  {}: {} = 0 (content {}), discriminant {} {}",
                e.constraint,
                format_quadratic(&e.coefficients, &e.parameter),
                e.content,
                e.discriminant,
                if e.is_perfect_square {
                    "IS a perfect square"
                } else {
                    "is not a square"
                }
            );
            if !e.integer_roots.is_empty() {
                let roots: Vec<String> = e.integer_roots.iter().map(|r| r.to_string()).collect();
                let _ = writeln!(out, "    integer roots: {}", roots.join(", "));
            }
        }
        let hits = if self.sweep.zero_residual_hits.is_empty() {
            "none".to_string()
        } else {
            self.sweep
                .zero_residual_hits
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(
            out,
            "box sweep: bound {}, {} ample classes examined, zero residuals: {}",
            self.search_box, self.sweep.classes_examined, hits
        );
        let _ = writeln!(out, "conclusion: {}", self.conclusion.as_str());
        out
    }
}
