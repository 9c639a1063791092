//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the report is always printed; exits nonzero on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use pdm_spectra::cli::{
    coulomb_cells, fit_quadratic, format_coulomb_cell, molecule_cells, parse_gammas, sweep_gamma, SweepQuantity,
    TABLE_GAMMAS,
};
use pdm_spectra::model::{Deformation, MoleculePreset, PotentialParams, UnitSystem};
use pdm_spectra::specfun::{
    beta_integral_identity_check, gamma_ratio, hyp2f1, hyp2f1_asymptotic_split, hyp2f1_on, integrate_with, Branch,
    HypParams, IntegrateOptions,
};
use pdm_spectra::spectrum::{
    energy_limit_constant_mass, energy_limit_coulomb, energy_limit_coulomb_pdm, energy_principal,
    hypergeometric_parameters,
};
use pdm_spectra::verifier::{solve_numerical_spectrum, Discretization, GridSpec};
use pdm_spectra::wavefunction::{count_nodes, extent, norm_integral, ode_residual, paper_normalization};
use pdm_spectra::{energy_analytic, WavefunctionSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Coulomb table as printed, `None` for the two "---" cells.
const TABLE_II: [[Option<f64>; 4]; 6] = [
    [Some(12.5000), Some(12.2513), Some(11.2813), Some(10.1250)],
    [Some(3.12500), Some(2.88000), Some(2.00000), Some(1.12500)],
    [Some(1.38889), Some(1.15014), Some(0.42014), Some(0.01389)],
    [Some(0.78125), Some(0.55125), Some(0.03125), Some(0.28125)],
    [Some(0.50000), Some(0.28125), Some(0.03125), None],
    [Some(0.34722), Some(0.14222), Some(0.22222), None],
];

/// CO table as printed (eV).
const TABLE_I: [[f64; 4]; 6] = [
    [0.051710, 0.058521, 0.082237, 0.111846],
    [0.153947, 0.172279, 0.241986, 0.328809],
    [0.254787, 0.284476, 0.399400, 0.542203],
    [0.354256, 0.395141, 0.554523, 0.752090],
    [0.452378, 0.504302, 0.707395, 0.958530],
    [0.549178, 0.611985, 0.858054, 0.958530],
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("{detail} ({:.0} ms)", took.as_secs_f64() * 1e3))
}

fn e(msg: impl std::fmt::Display) -> String {
    msg.to_string()
}

fn table_ii() -> Outcome {
    timed(Duration::from_secs(1), || {
        let cells = coulomb_cells().map_err(e)?;
        let mut numeric = 0;
        let mut worst: f64 = 0.0;
        for c in &cells {
            let col = TABLE_GAMMAS.iter().position(|g| *g == c.gamma).unwrap();
            match TABLE_II[c.n as usize][col] {
                Some(printed) => {
                    numeric += 1;
                    let gap = (c.value - printed).abs();
                    worst = worst.max(gap);
                    ensure(gap <= 1e-4, || format!("n={} gamma={}: {} vs {printed}", c.n, c.gamma, c.value))?;
                    let text = format_coulomb_cell(c.value);
                    ensure(text.parse::<f64>().unwrap() == printed, || {
                        format!("n={} gamma={}: printed {text}, table {printed}", c.n, c.gamma)
                    })?;
                }
                None => ensure(!c.physical, || format!("n={} gamma={} should be unphysical", c.n, c.gamma))?,
            }
        }
        ensure(numeric == 22, || format!("{numeric} numeric cells"))?;
        Ok(format!("22 cells, max |d(-E)| = {worst:.1e}, 2 dashed cells flagged"))
    })
}

fn table_i() -> Outcome {
    timed(Duration::from_secs(1), || {
        let cells = molecule_cells(&MoleculePreset::carbon_monoxide()).map_err(e)?;
        let (mut worst0, mut worst_g): (f64, f64) = (0.0, 0.0);
        let mut compared = 0;
        for c in &cells {
            let col = TABLE_GAMMAS.iter().position(|g| *g == c.gamma).unwrap();
            if c.n == 5 && c.gamma == 1.0 {
                continue; // duplicate of the n = 4 cell in the printed table
            }
            compared += 1;
            let gap = (c.value - TABLE_I[c.n as usize][col]).abs();
            let de = MoleculePreset::carbon_monoxide().dissociation_energy;
            ensure(c.value > 0.0 && c.value < de, || {
                format!("n={} gamma={}: {} outside (0, D_e)", c.n, c.gamma, c.value)
            })?;
            if c.gamma == 0.0 {
                worst0 = worst0.max(gap);
                ensure(gap <= 5e-3, || format!("n={} gamma=0: gap {gap:.2e}", c.n))?;
            } else {
                worst_g = worst_g.max(gap);
                ensure(gap <= 1e-2, || format!("n={} gamma={}: gap {gap:.2e}", c.n, c.gamma))?;
            }
        }
        Ok(format!("{compared} cells, max gap {worst0:.1e} eV at gamma=0, {worst_g:.1e} eV at gamma>0"))
    })
}

fn oracle() -> Outcome {
    timed(Duration::from_secs(30), || {
        let units = UnitSystem::atomic();
        let mut worst: f64 = 0.0;
        for (a, b) in [(0.0, 1.0), (0.0, 5.0), (1.0, 5.0)] {
            let params = PotentialParams::new(a, b).map_err(e)?;
            let d = Deformation::none();
            let grid = GridSpec::for_levels(&units, d, &params, 3, 4000).map_err(e)?;
            let numeric =
                solve_numerical_spectrum(&units, d, &params, &grid, Discretization::Liouville, 3).map_err(e)?;
            for (i, level) in numeric.levels.iter().enumerate() {
                let big_n = i as u32 + 1;
                let exact = if a == 0.0 {
                    energy_limit_coulomb(big_n, b, &units).map_err(e)?
                } else {
                    energy_limit_constant_mass(big_n, &params, &units).map_err(e)?
                };
                let rel = (level.energy - exact).abs() / exact.abs();
                worst = worst.max(rel);
                ensure(rel <= 1e-3, || format!("A={a} B={b} N={big_n}: {} vs {exact}", level.energy))?;
            }
        }
        Ok(format!("9 levels at 4000 points, max relative gap {worst:.1e}"))
    })
}

fn limits() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0017);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let units =
            UnitSystem::new(rng.gen_range(0.5..2.0), rng.gen_range(0.5..3.0), pdm_spectra::model::UnitMode::Atomic)
                .map_err(e)?;
        let params = PotentialParams::new(rng.gen_range(0.0..3.0), rng.gen_range(0.1..10.0)).map_err(e)?;
        let d = Deformation::new(rng.gen_range(0.0..2.0)).map_err(e)?;
        let n = rng.gen_range(0..8);
        let e16 = energy_analytic(n, &units, d, &params).map_err(e)?.energy;
        let e17 = energy_principal(n + 1, &units, d, &params).map_err(e)?;
        let rel = (e16 - e17).abs() / e16.abs().max(f64::MIN_POSITIVE);
        worst = worst.max(rel);
        ensure(rel <= 1e-12, || format!("n={n} {params:?} gamma={}: {e16} vs {e17}", d.gamma()))?;
    }
    let units = UnitSystem::atomic();
    let params = PotentialParams::coulomb(5.0).map_err(e)?;
    let mut worst20: f64 = 0.0;
    for n in 0..6 {
        for g in TABLE_GAMMAS {
            let d = Deformation::new(g).map_err(e)?;
            let e16 = energy_analytic(n, &units, d, &params).map_err(e)?.energy;
            let lim = energy_limit_coulomb_pdm(n + 1, d, 5.0, &units).map_err(e)?;
            let rel = (e16 - lim.consistent).abs() / e16.abs();
            worst20 = worst20.max(rel);
            ensure(rel <= 1e-12, || format!("n={n} gamma={g}: {e16} vs {}", lim.consistent))?;
        }
    }
    let printed = energy_limit_coulomb_pdm(1, Deformation::none(), 5.0, &units).map_err(e)?.printed;
    let exact = energy_limit_coulomb(1, 5.0, &units).map_err(e)?;
    ensure((printed - exact).abs() > 1.0, || format!("printed variant unexpectedly agrees: {printed}"))?;
    Ok(format!(
        "principal form {worst:.1e} over 100 draws, Coulomb expansion {worst20:.1e}, printed n'=2N-1 gives {printed} vs {exact}"
    ))
}

fn quantization() -> Outcome {
    let units = UnitSystem::atomic();
    let params = PotentialParams::coulomb(5.0).map_err(e)?;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 0..6u32 {
        for g in TABLE_GAMMAS.into_iter().filter(|g| *g > 0.0) {
            let entry = energy_analytic(n, &units, Deformation::new(g).map_err(e)?, &params).map_err(e)?;
            let h = entry.hypergeometric.ok_or("missing hypergeometric data")?;
            let rebuilt = hypergeometric_parameters(h.p, h.q, h.coefficients.big_m, entry.energy, h.branch.imag_sign)
                .map_err(e)?;
            let resid = (rebuilt.a + n as f64).abs();
            worst = worst.max(resid);
            count += 1;
            ensure(resid < 1e-9, || format!("n={n} gamma={g}: |a+n| = {resid:.2e}"))?;
        }
    }
    Ok(format!("{count} deformed levels, max |a+n| = {worst:.1e}"))
}

fn wavefunctions() -> Outcome {
    let units = UnitSystem::atomic();
    let params = PotentialParams::coulomb(5.0).map_err(e)?;
    let (mut norm_gap, mut worst_resid): (f64, f64) = (0.0, 0.0);
    for g in [0.1, 0.5] {
        for n in 0..3 {
            let entry = energy_analytic(n, &units, Deformation::new(g).map_err(e)?, &params).map_err(e)?;
            let spec = WavefunctionSpec::new(entry).map_err(e)?.normalized().map_err(e)?;
            let norm = norm_integral(&spec).map_err(e)?;
            norm_gap = norm_gap.max((norm - 1.0).abs());
            ensure((norm - 1.0).abs() <= 1e-6, || format!("gamma={g} n={n}: norm {norm}"))?;
            let x_max = extent(&spec, 1e-14).map_err(e)?;
            let nodes = count_nodes(&spec, x_max, 20_000).map_err(e)?;
            ensure(nodes == n as usize, || format!("gamma={g} n={n}: {nodes} nodes"))?;
            let resid = ode_residual(&spec, x_max, 4_000, 1e-4).map_err(e)?;
            worst_resid = worst_resid.max(resid);
            ensure(resid < 1e-4, || format!("gamma={g} n={n}: residual {resid:.2e}"))?;
        }
    }
    Ok(format!("6 levels, max |norm-1| = {norm_gap:.1e}, nodes = n, max residual {worst_resid:.1e}"))
}

fn special_functions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a055);
    let opts = IntegrateOptions { abs_tol: 1e-14, rel_tol: 1e-13, max_intervals: 4000 };
    let mut worst_gauss: f64 = 0.0;
    for _ in 0..20 {
        let a = rng.gen_range(-1.0..1.0);
        let b = rng.gen_range(0.6..2.5);
        let c = a + b + rng.gen_range(0.6..2.5);
        let closed = gamma_ratio(&[c, c - a - b], &[c - a, c - b]).map_err(e)?;
        // Euler integral at z = 1 in t = sin^2(theta).
        let (s1, s2) = (2.0 * b - 1.0, 2.0 * (c - a - b) - 1.0);
        let integral = integrate_with(
            |th: f64| 2.0 * th.sin().powf(s1) * th.cos().powf(s2),
            0.0,
            std::f64::consts::FRAC_PI_2,
            opts,
        )
        .map_err(e)?
        .value;
        let quad = integral * gamma_ratio(&[c], &[b, c - b]).map_err(e)?;
        let direct = hyp2f1(&HypParams::new(a, b, c), 1.0).map_err(e)?.value;
        let gap = ((closed - quad).abs().max((closed - direct).abs())) / closed.abs();
        worst_gauss = worst_gauss.max(gap);
        ensure(gap < 1e-8, || format!("Gauss sum ({a}, {b}; {c}): {closed} / {quad} / {direct}"))?;
    }
    let grid = [0.5, 1.0, 2.0, 3.0];
    let mut worst_beta: f64 = 0.0;
    for r in grid {
        for rp in grid {
            for x in [-0.5, 0.0, 0.5] {
                let resid = beta_integral_identity_check(r, rp, x).map_err(e)?;
                worst_beta = worst_beta.max(resid);
                ensure(resid < 1e-8, || format!("Beta identity r={r} r'={rp} x={x}: {resid:.2e}"))?;
            }
        }
    }
    let mut worst_split: f64 = 0.0;
    for (p, z) in [(HypParams::new(0.5, 1.25, 2.0), -50.0), (HypParams::new(0.3, 0.7, 1.1), -100.0)] {
        let split = hyp2f1_asymptotic_split(&p).map_err(e)?;
        let recombined = split.recombine(z).map_err(e)?;
        let direct = hyp2f1_on(Branch::Pfaff, &p, z).map_err(e)?;
        let gap = (recombined - direct).abs() / direct.abs();
        worst_split = worst_split.max(gap);
        ensure(gap < 1e-6, || format!("recombination {p:?} at {z}: {recombined} vs {direct}"))?;
    }
    for n in 0..4 {
        let p = HypParams::new(-(n as f64), 2.5, 1.5);
        ensure(hyp2f1_asymptotic_split(&p).is_err(), || format!("a = -{n} split should pole"))?;
    }
    let entry = energy_analytic(
        1,
        &UnitSystem::atomic(),
        Deformation::new(0.5).map_err(e)?,
        &PotentialParams::coulomb(5.0).map_err(e)?,
    )
    .map_err(e)?;
    let chain = paper_normalization(&entry).map_err(e)?;
    ensure(!chain.pole_flags.is_empty(), || "closed-form chain raised no pole flag".into())?;
    Ok(format!(
        "Gauss {worst_gauss:.1e} (20 draws), Beta identity {worst_beta:.1e} (48 points), recombination {worst_split:.1e}, a=-n poles flagged"
    ))
}

fn figure_data() -> Outcome {
    let gammas = parse_gammas("0:3:31").map_err(e)?;
    let co = MoleculePreset::carbon_monoxide();
    let cases = [
        (
            UnitSystem::atomic(),
            PotentialParams::coulomb(5.0).map_err(e)?,
            SweepQuantity::MinusEnergy,
            TABLE_II[0][0].unwrap(),
            TABLE_II[0][3].unwrap(),
            1e-4,
        ),
        (co.units(), co.potential(), SweepQuantity::ShiftedEnergy, TABLE_I[0][0], TABLE_I[0][3], 1e-2),
    ];
    let mut report = Vec::new();
    for (units, params, quantity, at0, at1, tol) in cases {
        let csv = sweep_gamma(&units, &params, 0, &gammas, quantity).map_err(e)?;
        let rows: Vec<(f64, f64)> = csv
            .lines()
            .skip(1)
            .map(|l| {
                let mut it = l.split(',');
                (it.next().unwrap().parse().unwrap(), it.next().unwrap().parse().unwrap())
            })
            .collect();
        let (_, resid) = fit_quadratic(&rows).map_err(e)?;
        ensure(resid < 1e-10, || format!("quadratic fit residual {resid:.2e}"))?;
        let find = |g: f64| rows.iter().find(|r| (r.0 - g).abs() < 1e-12).map(|r| r.1).unwrap();
        ensure((find(0.0) - at0).abs() <= tol && (find(1.0) - at1).abs() <= tol, || {
            format!("endpoints {} / {} vs table {at0} / {at1}", find(0.0), find(1.0))
        })?;
        report.push(format!("{resid:.1e}"));
    }
    Ok(format!("quadratic fit residuals {} (Coulomb, CO); table endpoints agree", report.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Table II reproduction", table_ii),
        ("Table I reproduction (calibrated CO)", table_i),
        ("Oracle equivalence at gamma=0", oracle),
        ("Limit-formula consistency", limits),
        ("Quantization residual", quantization),
        ("Wavefunction properties", wavefunctions),
        ("Special-function suite", special_functions),
        ("Figure 1 sweep data", figure_data),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
