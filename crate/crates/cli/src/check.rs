//! Seeded invariant suites behind `qcharts check`.

use std::fmt::Write as _;

use clap::ValueEnum;
use qubit_charts::charts::{
    canonical_chart, charts_containing, factor_coordinate, local_transform, nu, nu_closed_form,
    phi, standard_gauges, t_of_vec, tensor_split, x_p_family, z_matrix, ChartIndex, Quregister2,
    Side, CHART_TOL,
};
use qubit_charts::density::{
    binary_entropy, entropy_closed_form, lambda_pair, mix, partial_trace, reduced_entropy, rho1,
    rho2, von_neumann_entropy, MixedState, Subsystem,
};
use qubit_charts::linalg::{
    cr, det2, det4, hermitian_eigenvalues, kron_mat, xi, CMat2, CVec4, UnitComplex,
};
use qubit_charts::qubit::{
    commutation_deviation, embed_psi1, gate_commutes_with_rng, invert_psi1, Qubit, ORDER_TOL,
};
use qubit_charts::sampling::{
    gaussian_vec, random_matrix2, random_non_special_unitary, random_product_state,
    random_qubit, random_quregister, random_su2, seeded_rng, SeededRng, RNG_ALGORITHM,
};

use crate::format::{real, reals};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    QubitGroup,
    Charts,
    Density,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::QubitGroup => "qubit-group",
            Suite::Charts => "charts",
            Suite::Density => "density",
            Suite::All => "all",
        }
    }
}

/// Whether a deviation must stay below the tolerance or exceed it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    Above,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub property: &'static str,
    pub input: String,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertySummary {
    pub name: &'static str,
    pub bound: Bound,
    pub tol: f64,
    pub checked: usize,
    pub violations: usize,
    pub worst: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub suite: Suite,
    pub samples: usize,
    pub seed: u64,
    pub tol_override: Option<f64>,
    pub properties: Vec<PropertySummary>,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    fn new(suite: Suite, samples: usize, seed: u64, tol_override: Option<f64>) -> Self {
        Self {
            suite,
            samples,
            seed,
            tol_override,
            properties: Vec::new(),
            violations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(
        &mut self,
        name: &'static str,
        bound: Bound,
        tol: f64,
        deviation: f64,
        input: impl FnOnce() -> String,
    ) {
        let tol = self.tol_override.unwrap_or(tol);
        let ok = match bound {
            Bound::AtMost => deviation <= tol,
            Bound::Above => deviation > tol,
        };
        let idx = match self.properties.iter().position(|p| p.name == name) {
            Some(i) => i,
            None => {
                self.properties.push(PropertySummary {
                    name,
                    bound,
                    tol,
                    checked: 0,
                    violations: 0,
                    worst: match bound {
                        Bound::AtMost => 0.0,
                        Bound::Above => f64::INFINITY,
                    },
                });
                self.properties.len() - 1
            }
        };
        let p = &mut self.properties[idx];
        p.checked += 1;
        p.worst = match bound {
            Bound::AtMost => p.worst.max(deviation),
            Bound::Above => p.worst.min(deviation),
        };
        if !ok {
            p.violations += 1;
            self.violations.push(Violation {
                property: name,
                input: input(),
                deviation,
            });
        }
    }

    fn at_most(&mut self, name: &'static str, tol: f64, dev: f64, input: impl FnOnce() -> String) {
        self.record(name, Bound::AtMost, tol, dev, input)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.suite.name());
        let _ = writeln!(out, "rng: {RNG_ALGORITHM}");
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "samples: {}", self.samples);
        let _ = writeln!(
            out,
            "tolerance_override: {}",
            self.tol_override.map_or("none".to_string(), real)
        );
        for p in &self.properties {
            let rel = match p.bound {
                Bound::AtMost => "<=",
                Bound::Above => ">",
            };
            let _ = writeln!(
                out,
                "property: {} checked={} violations={} worst={} required{}{}",
                p.name,
                p.checked,
                p.violations,
                real(p.worst),
                rel,
                real(p.tol)
            );
        }
        for v in &self.violations {
            let _ = writeln!(
                out,
                "violation: property={} deviation={} input={}",
                v.property,
                real(v.deviation),
                v.input
            );
        }
        let _ = writeln!(out, "violations: {}", self.violations.len());
        let _ = writeln!(out, "status: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

pub fn run_suite(suite: Suite, samples: usize, seed: u64, tol: Option<f64>) -> CheckReport {
    let mut report = CheckReport::new(suite, samples, seed, tol);
    let parts: &[fn(&mut CheckReport, usize, &mut SeededRng)] = match suite {
        Suite::QubitGroup => &[qubit_group],
        Suite::Charts => &[charts],
        Suite::Density => &[density],
        Suite::All => &[qubit_group, charts, density],
    };
    for part in parts {
        let mut rng = seeded_rng(seed);
        part(&mut report, samples, &mut rng);
    }
    report
}

fn qubit_input(names: &[&str], qs: &[&Qubit]) -> String {
    names
        .iter()
        .zip(qs)
        .map(|(n, q)| format!("{n}=[{}]", reals(q.vec())))
        .collect::<Vec<_>>()
        .join(" ")
}

fn state_input(names: &[&str], xs: &[&CVec4]) -> String {
    names
        .iter()
        .zip(xs)
        .map(|(n, x)| format!("{n}=[{}]", reals(x)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn matrix_input(m: &CMat2) -> String {
    let v = [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]];
    let s: Vec<String> = v.iter().flat_map(|z| [z.re, z.im]).map(|x| format!("{x:.17e}")).collect();
    format!("A=[{}]", s.join(" "))
}

fn qubit_group(r: &mut CheckReport, samples: usize, rng: &mut SeededRng) {
    let e = Qubit::identity();
    let table = [
        ((1.0, 0.0), 1),
        ((-1.0, 0.0), 2),
        ((0.0, 1.0), 4),
        ((0.0, -1.0), 4),
        ((1.0, 1.0), 8),
        ((1.0, -1.0), 8),
        ((-1.0, 1.0), 8),
        ((-1.0, -1.0), 8),
    ];
    for ((a, b), want) in table {
        let x = Qubit::normalized(cr(a), cr(b)).expect("nonzero table entry");
        let got = x.order(1000, ORDER_TOL);
        let dev = if got == Some(want) { 0.0 } else { 1.0 };
        r.at_most("order_table", 0.0, dev, || qubit_input(&["x"], &[&x]));
    }
    for _ in 0..samples {
        let a = random_qubit(rng);
        let b = random_qubit(rng);
        let d = random_qubit(rng);
        let abc = || qubit_input(&["a", "b", "c"], &[&a, &b, &d]);
        r.at_most(
            "star_associativity",
            1e-12,
            a.star(&b).star(&d).distance(&a.star(&b.star(&d))),
            abc,
        );
        r.at_most(
            "star_identity",
            1e-12,
            e.star(&a).distance(&a).max(a.star(&e).distance(&a)),
            abc,
        );
        r.at_most(
            "star_inverse",
            1e-12,
            a.star(&a.star_inverse()).distance(&e).max(a.star_inverse().star(&a).distance(&e)),
            abc,
        );
        let hom = embed_psi1(&a.star(&b))
            .matrix()
            .max_abs_diff(&(*embed_psi1(&a).matrix() * *embed_psi1(&b).matrix()));
        r.at_most("psi1_homomorphism", 1e-12, hom, abc);
        let m = embed_psi1(&a);
        let bij = invert_psi1(&m)
            .distance(&a)
            .max(embed_psi1(&invert_psi1(&m)).matrix().max_abs_diff(m.matrix()));
        r.at_most("psi1_bijection", 1e-12, bij, abc);
        r.at_most("psi1_det_one", 1e-12, (m.matrix().det() - cr(1.0)).norm(), abc);

        let (x0, x1) = (a.x0(), a.x1());
        let sq = [x0 * x0 - x1 * x1.conj(), x1 * 2.0 * x0.re];
        let cube = [
            x0 * x0 * x0 - x1 * (x0 + 2.0 * x0.re) * x1.conj(),
            x1 * (x0.conj() * x0.conj() + x0 * 2.0 * x0.re - x1 * x1.conj()),
        ];
        let p2 = a.star_pow(2);
        let p3 = a.star_pow(3);
        let dev = [
            (p2.x0() - sq[0]).norm(),
            (p2.x1() - sq[1]).norm(),
            (p3.x0() - cube[0]).norm(),
            (p3.x1() - cube[1]).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        r.at_most("power_closed_forms", 1e-12, dev, abc);
        r.at_most(
            "power_unit_norm",
            1e-10,
            (a.star_pow(1000).vec().norm() - 1.0).abs(),
            abc,
        );

        let g = random_su2(rng);
        let dev = commutation_deviation(&g, &b);
        r.at_most("su2_gate_commutes", 1e-10, dev, || {
            format!("{} {}", matrix_input(g.matrix()), qubit_input(&["x"], &[&b]))
        });
        let h = random_non_special_unitary(rng);
        let chk = gate_commutes_with_rng(&h, 100, 1e-10, rng);
        r.record("non_special_gate_fails_to_commute", Bound::Above, 1e-3, chk.max_deviation, || {
            format!(
                "{} worst_{}",
                matrix_input(h.matrix()),
                qubit_input(&["x"], &[&chk.worst_input])
            )
        });
    }
}

fn nu_spread(x: &Quregister2, ks: &[ChartIndex], gauges: &[UnitComplex]) -> f64 {
    let vals: Vec<f64> = ks
        .iter()
        .flat_map(|&k| gauges.iter().map(move |&u| nu(x, k, u).expect("chart member")))
        .collect();
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if vals.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

fn charts(r: &mut CheckReport, samples: usize, rng: &mut SeededRng) {
    let gauges = standard_gauges();
    for _ in 0..samples {
        let x = random_quregister(rng);
        let y = random_quregister(rng);
        let (p, c0, c1) = random_product_state(rng);
        let xin = || state_input(&["x"], &[x.vec()]);
        let pin = || state_input(&["x"], &[p.vec()]);

        r.at_most("t_bound", 1e-12, (x.t().norm() - 0.5).max(0.0), xin);

        let mut unit = 0.0f64;
        let mut nu_sep = 0.0f64;
        let mut coincide = 0.0f64;
        let kron = kron_mat(embed_psi1(&c0).matrix(), embed_psi1(&c1).matrix());
        for k in charts_containing(&p, CHART_TOL) {
            for u in gauges {
                let m = phi(&p, k, u).expect("chart member").matrix;
                unit = unit.max(m.unitarity_defect()).max((det4(&m) - cr(1.0)).norm());
                nu_sep = nu_sep.max(nu(&p, k, u).expect("chart member").abs());
            }
            let u = xi(factor_coordinate(&c0, &c1, k.index()));
            coincide = coincide.max(phi(&p, k, u).expect("chart member").matrix.max_abs_diff(&kron));
        }
        r.at_most("separable_unitarity", 1e-10, unit, pin);
        r.at_most("separable_nu_zero", 1e-9, nu_sep, pin);
        r.at_most("product_coincidence", 1e-12, coincide, pin);

        let ks = charts_containing(&x, CHART_TOL);
        let anchor = ks
            .iter()
            .flat_map(|&k| gauges.iter().map(move |&u| (k, u)))
            .map(|(k, u)| phi(&x, k, u).expect("chart member").matrix.column(0).max_abs_diff(x.vec()))
            .fold(0.0, f64::max);
        r.at_most("column_zero_anchor", 0.0, anchor, xin);

        let kc = canonical_chart(&x);
        r.at_most("gauge_independence", 1e-10, nu_spread(&x, &[kc], &gauges), xin);
        if ks.len() >= 2 {
            r.at_most("chart_independence", 1e-10, nu_spread(&x, &ks, &gauges), xin);
        }
        let emb = phi(&x, kc, UnitComplex::ONE).expect("canonical chart");
        let sn = emb.spectral_norm();
        r.at_most(
            "nu_closed_form_oracle",
            1e-9,
            (nu_closed_form(&x) - (sn - 1.0)).abs(),
            xin,
        );
        let fro = gauges
            .iter()
            .map(|&u| phi(&x, kc, u).expect("canonical chart").spectral_norm())
            .fold(0.0, f64::max);
        r.at_most("frobenius_bound", 0.0, (fro - 2.0).max(0.0), xin);

        let t = x.t().norm();
        if t < 0.45 {
            let want = [1.0 - 2.0 * t, 1.0, 1.0, 1.0 + 2.0 * t];
            let dev = gauges
                .iter()
                .map(|&u| {
                    let got = z_matrix(&x, kc, u).expect("away from the Bell value").spectrum;
                    got.iter().zip(want).map(|(g, w)| (g - w).abs()).fold(0.0, f64::max)
                })
                .fold(0.0, f64::max);
            r.at_most("z_spectrum", 1e-8, dev, xin);
        }

        let a = random_matrix2(rng);
        let want = det2(&a) * x.t();
        let dev = [Side::Left, Side::Right]
            .iter()
            .map(|&s| (t_of_vec(&local_transform(x.vec(), &a, s)) - want).norm())
            .fold(0.0, f64::max)
            / (1.0 + want.norm());
        r.at_most("det_scaling", 1e-12, dev, || {
            format!("{} {}", matrix_input(&a), xin())
        });

        let g = random_su2(rng);
        let phase = random_qubit(rng).x0();
        let un = g.matrix().scale(phase / phase.norm());
        let dev = [Side::Left, Side::Right]
            .iter()
            .map(|&s| {
                let z = Quregister2::normalized(local_transform(x.vec(), &un, s)).expect("unitary image");
                (z.t().norm() - t).abs().max((nu_closed_form(&z) - nu_closed_form(&x)).abs())
            })
            .fold(0.0, f64::max);
        r.at_most("local_unitary_invariance", 1e-11, dev, || {
            format!("{} {}", matrix_input(&un), xin())
        });

        let dn = nu_closed_form(&x) - nu_closed_form(&y);
        let de = reduced_entropy(&rho2(&x), Subsystem::First)
            - reduced_entropy(&rho2(&y), Subsystem::First);
        let disagree = dn.abs() > 1e-9 && de.abs() > 1e-9 && dn.signum() != de.signum();
        r.at_most("entropy_monotone_consistency", 0.0, f64::from(u8::from(disagree)), || {
            state_input(&["x", "y"], &[x.vec(), y.vec()])
        });

        let delta: CVec4 = gaussian_vec(rng);
        let delta = delta.scale(cr(1e-6 / delta.norm()));
        let z = Quregister2::normalized(*x.vec() + delta).expect("small perturbation");
        let step = z.vec().distance(x.vec());
        let excess = ((nu_closed_form(&z) - nu_closed_form(&x)).abs() - 10.0 * step).max(0.0);
        r.at_most("nu_continuity", 0.0, excess, || {
            state_input(&["x", "x_perturbed"], &[x.vec(), z.vec()])
        });

        let kp = canonical_chart(&p);
        let dev = match tensor_split(&p, kp, UnitComplex::ONE) {
            Ok(s) => s.product().max_abs_diff(p.vec()),
            Err(_) => f64::INFINITY,
        };
        r.at_most("split_round_trip", 1e-10, dev, pin);
    }
}

/// Reduced matrices written out coordinate by coordinate.
fn reduced_by_hand(x: &Quregister2) -> (CMat2, CMat2) {
    let [x0, x1, x2, x3] = x.vec().0;
    let mut first = CMat2::zeros();
    first[(0, 0)] = cr(x0.norm_sqr() + x1.norm_sqr());
    first[(0, 1)] = x0 * x2.conj() + x1 * x3.conj();
    first[(1, 0)] = x2 * x0.conj() + x3 * x1.conj();
    first[(1, 1)] = cr(x2.norm_sqr() + x3.norm_sqr());
    let mut second = CMat2::zeros();
    second[(0, 0)] = cr(x0.norm_sqr() + x2.norm_sqr());
    second[(0, 1)] = x0 * x1.conj() + x2 * x3.conj();
    second[(1, 0)] = x1 * x0.conj() + x3 * x2.conj();
    second[(1, 1)] = cr(x1.norm_sqr() + x3.norm_sqr());
    (first, second)
}

fn density(r: &mut CheckReport, samples: usize, rng: &mut SeededRng) {
    for _ in 0..samples {
        let x = random_quregister(rng);
        let y = random_quregister(rng);
        let a = random_qubit(rng);
        let b = random_qubit(rng);
        let w = random_qubit(rng).x0().norm_sqr();
        let xin = || state_input(&["x"], &[x.vec()]);

        let m = rho2(&x);
        let mm = *m.matrix();
        let dev = mm
            .hermitian_defect()
            .max((mm.trace() - cr(1.0)).norm())
            .max((mm * mm).max_abs_diff(&mm));
        r.at_most("rho2_projector", 1e-10, dev, xin);

        let dev = rho2(&Quregister2::from_product(&a, &b))
            .matrix()
            .max_abs_diff(&kron_mat(rho1(&a).matrix(), rho1(&b).matrix()));
        r.at_most("rho_of_product", 1e-13, dev, || qubit_input(&["a", "b"], &[&a, &b]));

        let (first, second) = reduced_by_hand(&x);
        let dev = partial_trace(&m, Subsystem::First)
            .matrix()
            .max_abs_diff(&first)
            .max(partial_trace(&m, Subsystem::Second).matrix().max_abs_diff(&second));
        r.at_most("partial_trace_forms_agree", 1e-13, dev, xin);

        let mixed = mix(&MixedState::try_new(vec![(w, x), (1.0 - w, y)]).expect("valid weights"));
        let dev = [Subsystem::First, Subsystem::Second]
            .iter()
            .map(|&s| {
                let rhs = partial_trace(&rho2(&x), s).matrix().scale(cr(w))
                    + partial_trace(&rho2(&y), s).matrix().scale(cr(1.0 - w));
                partial_trace(&mixed, s).matrix().max_abs_diff(&rhs)
            })
            .fold(0.0, f64::max);
        r.at_most("partial_trace_linearity", 1e-12, dev, || {
            format!("w={} {}", real(w), state_input(&["x", "y"], &[x.vec(), y.vec()]))
        });

        let (l0, l1) = lambda_pair(&x);
        let ev0 = hermitian_eigenvalues(partial_trace(&m, Subsystem::First).matrix())
            .expect("Hermitian marginal");
        let ev1 = hermitian_eigenvalues(partial_trace(&m, Subsystem::Second).matrix())
            .expect("Hermitian marginal");
        let dev = [ev0, ev1]
            .iter()
            .map(|ev| (ev[0] - l0).abs().max((ev[1] - l1).abs()))
            .fold(0.0, f64::max);
        r.at_most("lambda_matches_marginal_spectrum", 1e-10, dev, xin);

        let e0 = reduced_entropy(&m, Subsystem::First);
        let e1 = reduced_entropy(&m, Subsystem::Second);
        r.at_most("marginal_entropies_equal", 1e-10, (e0 - e1).abs(), xin);
        r.at_most(
            "entropy_closed_form",
            1e-10,
            (entropy_closed_form(&x) - e0).abs(),
            xin,
        );
        r.at_most("pure_state_entropy_zero", 1e-9, von_neumann_entropy(&m), xin);

        let xp = x_p_family(w).expect("w in [0, 1]");
        let mp = rho2(&xp);
        let dev = partial_trace(&mp, Subsystem::First)
            .matrix()
            .max_abs_diff(&CMat2::from_diagonal([cr(w), cr(1.0 - w)]));
        r.at_most("x_p_marginal", 1e-13, dev, || format!("p={}", real(w)));
        r.at_most(
            "x_p_shannon_entropy",
            1e-12,
            (reduced_entropy(&mp, Subsystem::First) - binary_entropy(w)).abs(),
            || format!("p={}", real(w)),
        );
    }
}
