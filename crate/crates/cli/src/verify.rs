//! Verification suites behind `dh verify`.

use std::path::Path;

use anyhow::Result;
use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use diffhom::dpoly::{is_diff_homogeneous, span_rank, DiffPoly};
use diffhom::exact::{binomial, factorial, int, Rational};
use diffhom::hwv::{
    almost_idempotent_factor, basis_indices, check_alpha_expansion, check_unipotent_invariance, check_weight,
    e_iso, e_iso_image_dim, hwv_basis, hwv_basis_independent, iso_solution_dim, kernel_dim_full,
    kernel_dim_isotypic, pi, symmetrizer_projection, Tensor,
};
use diffhom::jets::{census_from_basis, classify_element, forms_count, verify_jet_census_with};
use diffhom::pde::{
    is_solution, solution_space_basis, solution_space_dim_with_bound, span_within_solutions, vandermonde_degree,
    vandermonde_derivative_basis, multipoly_rank, System,
};
use diffhom::sampling::{as_param_matrix, random_invertible, random_vector, rng};
use diffhom::tableaux::{count_semistandard, count_standard, partitions_of, semistandard_tableaux};
use diffhom::wronskian::{
    build_formal_wronskian, expand_combination, is_gl_stable, is_triangular, nilpotent_shift, reduce_to_triangular,
    verify_wedge_identity,
};

use crate::cache::load_basis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Suite {
    All,
    Basis,
    Rsk,
    Kernel,
    Pde,
    #[value(name = "appendixA")]
    AppendixA,
    Hwv,
    Jets,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Basis => "basis",
            Suite::Rsk => "rsk",
            Suite::Kernel => "kernel",
            Suite::Pde => "pde",
            Suite::AppendixA => "appendixA",
            Suite::Hwv => "hwv",
            Suite::Jets => "jets",
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Caps {
    pub max_d: Option<usize>,
    pub max_n: usize,
    pub max_k: Option<usize>,
}

impl Caps {
    /// Cap on `d` for suites that build differential polynomials.
    fn poly_d(&self) -> usize {
        self.max_d.unwrap_or(4)
    }

    /// Cap on `d` for purely combinatorial suites.
    fn comb_d(&self) -> usize {
        self.max_d.unwrap_or(8)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub params: Value,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

fn check<E: Serialize, C: Serialize>(id: &str, params: Value, expected: E, computed: C) -> Check {
    let expected = serde_json::to_value(expected).expect("serializable");
    let computed = serde_json::to_value(computed).expect("serializable");
    Check {
        id: id.to_string(),
        params,
        pass: expected == computed,
        expected,
        computed,
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: &'static str,
    pub seed: u64,
    pub caps: Caps,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub wall_time_ms: u128,
}

pub struct Context<'a> {
    pub caps: Caps,
    pub seed: u64,
    pub cache: Option<&'a Path>,
}

pub fn run(suite: Suite, ctx: &Context) -> Result<Vec<Check>> {
    let suites: Vec<Suite> = match suite {
        Suite::All => vec![
            Suite::Basis,
            Suite::Rsk,
            Suite::Kernel,
            Suite::Pde,
            Suite::AppendixA,
            Suite::Hwv,
            Suite::Jets,
        ],
        s => vec![s],
    };
    let mut out = Vec::new();
    for s in suites {
        out.extend(match s {
            Suite::Basis => basis_suite(ctx)?,
            Suite::Rsk => rsk_suite(ctx),
            Suite::Kernel => kernel_suite(ctx)?,
            Suite::Pde => pde_suite(ctx),
            Suite::AppendixA => appendix_suite(ctx)?,
            Suite::Hwv => hwv_suite(ctx)?,
            Suite::Jets => jets_suite(ctx)?,
            Suite::All => unreachable!(),
        });
    }
    Ok(out)
}

fn fact(d: usize) -> usize {
    factorial(d as u64).try_into().expect("small factorial")
}

fn pairs(max_n: usize, max_d: usize) -> Vec<(usize, usize)> {
    (0..=max_n).flat_map(|n| (1..=max_d).map(move |d| (n, d))).collect()
}

fn basis_suite(ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (n, d) in pairs(ctx.caps.max_n, ctx.caps.poly_d()) {
        let basis = load_basis(ctx.cache, n, d)?;
        let polys: Vec<DiffPoly> = basis.iter().map(|e| e.poly.clone()).collect();
        let p = json!({"N": n, "d": d});
        out.push(check("basis.rank", p.clone(), (n + 1).pow(d as u32), span_rank(&polys)));
        let failures: Vec<String> = basis
            .par_iter()
            .filter(|e| {
                is_diff_homogeneous(&e.poly)
                    .map(|h| !h.homogeneous || h.degree != Some(d as u32))
                    .unwrap_or(true)
            })
            .map(|e| format!("{:?}", e.datum))
            .collect();
        out.push(check("basis.homogeneous", p.clone(), Vec::<String>::new(), failures));
        if n > 0 {
            let mut r = rng(ctx.seed ^ ((n as u64) << 32) ^ d as u64);
            for trial in 0..3 {
                let a = as_param_matrix(&random_invertible(&mut r, n + 1));
                let stable = is_gl_stable(&polys, &a)?;
                out.push(check(
                    "basis.gl_stable",
                    json!({"N": n, "d": d, "trial": trial, "seed": ctx.seed}),
                    true,
                    stable,
                ));
            }
        }
    }
    Ok(out)
}

fn rsk_suite(ctx: &Context) -> Vec<Check> {
    let mut out = Vec::new();
    let max_d = ctx.caps.comb_d();
    for d in 1..=max_d {
        let sum: usize = partitions_of(d, None).iter().map(|l| count_standard(l).pow(2)).sum();
        out.push(check("rsk.standard_squares", json!({"d": d}), fact(d), sum));
    }
    for d in 1..=max_d.min(6) {
        for n in 1..=4usize {
            let sum: usize = partitions_of(d, None)
                .iter()
                .map(|l| count_standard(l) * count_semistandard(l, n))
                .sum();
            out.push(check("rsk.words", json!({"d": d, "n": n}), n.pow(d as u32), sum));
        }
    }
    out
}

fn kernel_suite(ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for d in 1..=ctx.caps.poly_d() {
        let k = d - 1;
        out.push(check("kernel.full", json!({"d": d, "k": k}), fact(d), kernel_dim_full(d, k)));
        for lambda in partitions_of(d, None) {
            out.push(check(
                "kernel.isotypic",
                json!({"d": d, "k": k, "shape": lambda.to_string()}),
                count_standard(&lambda),
                kernel_dim_isotypic(&lambda, k)?,
            ));
        }
    }
    Ok(out)
}

fn pde_suite(ctx: &Context) -> Vec<Check> {
    let mut out = Vec::new();
    for d in 1..=ctx.caps.poly_d() {
        let b = vandermonde_degree(d);
        let p = json!({"d": d});
        let dim = solution_space_dim_with_bound(d, b, System::PowerSums);
        out.push(check("pde.dimension", p.clone(), fact(d), dim));
        out.push(check(
            "pde.bound_stable",
            p.clone(),
            dim,
            solution_space_dim_with_bound(d, b + 2, System::PowerSums),
        ));
        let oracle = vandermonde_derivative_basis(d);
        out.push(check("pde.oracle_span", p.clone(), fact(d), oracle.len()));
        out.push(check("pde.oracle_solves", p.clone(), true, oracle.iter().all(is_solution)));
        out.push(check("pde.oracle_inside", p.clone(), oracle.len(), span_within_solutions(&oracle, b)));
        if d <= 3 {
            let s = solution_space_basis(d, b, System::PowerSums);
            let t = solution_space_basis(d, b, System::DistinctTuples);
            let mut both = s.clone();
            both.extend(t.iter().cloned());
            out.push(check(
                "pde.systems_agree",
                p,
                json!([s.len(), s.len()]),
                json!([t.len(), multipoly_rank(&both)]),
            ));
        }
    }
    out
}

fn appendix_suite(ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut r = rng(ctx.seed);
    for d in 1..=ctx.caps.poly_d() {
        let mut bad = Vec::new();
        for code in 0..d.pow(d as u32) {
            let alpha: Vec<usize> = (0..d).map(|j| (code / d.pow(j as u32)) % d).collect();
            let combo = reduce_to_triangular(&alpha)?;
            let ok = combo.iter().all(|(_, b)| is_triangular(b))
                && expand_combination(&combo)? == build_formal_wronskian(&alpha)?;
            if !ok {
                bad.push(alpha);
            }
        }
        out.push(check("appendixA.reduction", json!({"d": d}), Vec::<Vec<usize>>::new(), bad));
        let nil = nilpotent_shift(d);
        for i in 1..=d {
            let m = d + 1 - i;
            let e = |k: usize| -> Vec<Rational> { (0..d).map(|j| int((j == k) as i64)).collect() };
            let mut failures = 0;
            for code in 0..d.pow(m as u32) {
                let vs: Vec<_> = (0..m).map(|j| e((code / d.pow(j as u32)) % d)).collect();
                if !verify_wedge_identity(&nil, &vs, i)? {
                    failures += 1;
                }
            }
            for _ in 0..20 {
                let vs: Vec<_> = (0..m).map(|_| random_vector(&mut r, d)).collect();
                if !verify_wedge_identity(&nil, &vs, i)? {
                    failures += 1;
                }
            }
            out.push(check("appendixA.wedge", json!({"d": d, "i": i, "seed": ctx.seed}), 0, failures));
        }
    }
    Ok(out)
}

fn hwv_suite(ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let max_d = ctx.caps.poly_d();
    let max_k = ctx.caps.max_k.unwrap_or(3);
    for d in 1..=max_d {
        for lambda in partitions_of(d, None) {
            let shape = lambda.to_string();
            for k in 0..=max_k {
                for n in 0..=ctx.caps.max_n {
                    let basis = hwv_basis(&lambda, k, n);
                    let p = json!({"shape": shape, "k": k, "N": n});
                    if lambda.len() > n + 1 {
                        out.push(check("hwv.too_tall", p, json!([0, true]), json!([basis.len(), basis.diagnostic.is_some()])));
                        continue;
                    }
                    out.push(check("hwv.count", p.clone(), count_semistandard(&lambda, k + 1), basis.len()));
                    out.push(check("hwv.independent", p, true, hwv_basis_independent(&basis)));
                }
                let n = lambda.len() - 1;
                out.push(check(
                    "hwv.e_injective",
                    json!({"shape": shape, "k": k}),
                    count_semistandard(&lambda, k + 1),
                    e_iso_image_dim(&lambda, k, n)?,
                ));
            }
            let n = lambda.len() - 1;
            let tabs = semistandard_tableaux(&lambda, 0, max_k.min(2));
            let weight = tabs.iter().map(|t| check_weight(t, n)).collect::<Result<Vec<_>, _>>()?;
            let unip = tabs.iter().map(|t| check_unipotent_invariance(t, n)).collect::<Result<Vec<_>, _>>()?;
            let alpha = tabs.iter().map(|t| check_alpha_expansion(t, max_k.min(2), n)).collect::<Result<Vec<_>, _>>()?;
            let p = json!({"shape": shape, "tableaux": tabs.len()});
            out.push(check("hwv.weight", p.clone(), true, weight.iter().all(|&b| b)));
            out.push(check("hwv.unipotent", p.clone(), true, unip.iter().all(|&b| b)));
            out.push(check("hwv.alpha_expansion", p, true, alpha.iter().all(|&b| b)));
            if d <= 3 {
                for k in 0..=max_k.min(d) {
                    let mut mismatches = 0;
                    for index in basis_indices(d, k) {
                        let t = Tensor::basis(k, index)?;
                        if e_iso(&pi(&t, &lambda, n)?, &lambda, k)? != symmetrizer_projection(&t, &lambda)? {
                            mismatches += 1;
                        }
                    }
                    out.push(check("hwv.diagram", json!({"shape": shape, "k": k}), 0, mismatches));
                    out.push(check(
                        "hwv.iso",
                        json!({"shape": shape, "k": k}),
                        kernel_dim_isotypic(&lambda, k)?,
                        iso_solution_dim(&lambda, k, n)?,
                    ));
                }
            }
        }
    }
    for d in 1..=(max_d + 1).min(5) {
        for lambda in partitions_of(d, None) {
            let m = almost_idempotent_factor(&lambda)?.map(|m| m.to_string());
            let expected = (Rational::from_integer(factorial(d as u64)) / int(count_standard(&lambda) as i64)).to_string();
            out.push(check("hwv.almost_idempotent", json!({"shape": lambda.to_string()}), Some(expected), m));
        }
    }
    for d in 1..=max_d {
        for k in 0..=max_k {
            for n in 0..=ctx.caps.max_n {
                let total: usize = partitions_of(d, None)
                    .iter()
                    .map(|l| hwv_basis(l, k, n).len() * count_semistandard(l, n + 1))
                    .sum();
                let dim: usize = binomial(((n + 1) * (k + 1) + d - 1) as u64, d as u64)
                    .to_integer()
                    .try_into()
                    .expect("small");
                out.push(check("hwv.decomposition", json!({"d": d, "k": k, "N": n}), dim, total));
            }
        }
    }
    Ok(out)
}

fn jets_suite(ctx: &Context) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (n, d) in pairs(ctx.caps.max_n, ctx.caps.poly_d()) {
        let basis = load_basis(ctx.cache, n, d)?;
        let p = json!({"N": n, "d": d});
        let report = verify_jet_census_with(&basis, n, d)?;
        for item in &report.items {
            out.push(check(
                &format!("jets.item{}", item.item),
                json!({"N": n, "d": d, "detail": item.detail}),
                true,
                item.pass,
            ));
        }
        let zero: Vec<(u32, usize)> = census_from_basis(&basis, d, 0)?.iter().map(|e| (e.n, e.count)).collect();
        out.push(check("jets.order_zero", p.clone(), vec![(0u32, forms_count(n, d))], zero));
        let classes = basis.iter().map(classify_element).collect::<Result<Vec<_>, _>>()?;
        let weight_failures = classes.iter().filter(|c| !c.weight_matches()).count();
        let above = classes.iter().filter(|c| c.computed_order > c.order_bound).count();
        let below = classes.iter().filter(|c| c.order_below_bound()).count();
        out.push(check("jets.weight_formula", p.clone(), 0, weight_failures));
        out.push(check(
            "jets.order_bound",
            json!({"N": n, "d": d, "below_bound": below}),
            0,
            above,
        ));
    }
    Ok(out)
}
