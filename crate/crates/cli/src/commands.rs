//! Subcommand orchestration.

use std::path::PathBuf;

use anyhow::Context;
use serde::Serialize;

use hypspec::geometry::{assemble_surface, bolza_group, length_spectrum, LengthSpectrum};
use hypspec::planar::{planar_find_eigenvalues, PlanarDomain};
use hypspec::selberg::{
    completeness_certificate, heat_trace_geometric, log_det, r_n_curve, riesz_test, weyl_check, zeta,
    Certificate, SpectralInput,
};
use hypspec::solver1d::{eigenvalues_1d, Potential, Problem1D};
use hypspec::surface_mps::{
    default_density, find_eigenvalues, find_eigenvalues_windowed, read_eigenvalues, write_eigenvalues,
    BasisSpec,
};

use crate::config::{
    config_error, grid, DomainConfig, LengthConfig, PotentialSpec, RunConfig, SelbergConfig, Solve1dConfig,
    SurfaceConfig, SurfaceSpec,
};
use crate::output::Outputs;
use crate::{Cli, Command, SelbergArgs};

fn range(v: Option<Vec<f64>>, current: [f64; 2]) -> [f64; 2] {
    v.map(|r| [r[0], r[1]]).unwrap_or(current)
}

fn surface_flag(s: Option<String>, current: SurfaceSpec) -> SurfaceSpec {
    s.map(SurfaceSpec::Named).unwrap_or(current)
}

pub fn run(cli: Cli) -> anyhow::Result<PathBuf> {
    let file = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let threads = cli
        .threads
        .or(file.threads)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    if threads == 0 {
        return Err(config_error("threads must be positive"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("building the thread pool")?;
    let dir = cli
        .output
        .clone()
        .or(file.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    let mut out = Outputs::create(&dir)?;

    match cli.command {
        Command::Solve1d(a) => {
            let mut c = file.solve1d.clone().unwrap_or_default();
            if let Some(p) = a.potential {
                c.potential = parse_potential(&p)?;
            }
            c.half_length = a.half_length.unwrap_or(c.half_length);
            c.range = range(a.range, c.range);
            c.step = a.step.unwrap_or(c.step);
            solve1d(&c, &mut out)?;
            out.finish("solve1d", threads, vec![], &c)
        }
        Command::SolveDomain(a) => {
            let mut c = file.solve_domain.clone().unwrap_or_default();
            if let Some(d) = a.domain {
                c.domain = match d.as_str() {
                    "disk" => PlanarDomain::Disk {
                        radius: a.radius.unwrap_or(1.0),
                    },
                    "ellipse" => {
                        let ab = a.semi_axes.clone().unwrap_or(vec![2.0, 1.0]);
                        PlanarDomain::Ellipse { a: ab[0], b: ab[1] }
                    }
                    other => return Err(config_error(format!("unknown domain `{other}`"))),
                };
            }
            c.range = range(a.range, c.range);
            c.step = a.step.unwrap_or(c.step);
            c.planar.seed = a.seed.unwrap_or(c.planar.seed);
            solve_domain(&c, &mut out)?;
            let seed = c.planar.seed;
            out.finish("solve-domain", threads, vec![("interior_points", seed)], &c)
        }
        Command::SolveSurface(a) => {
            let mut c = file.solve_surface.clone().unwrap_or_default();
            c.surface = surface_flag(a.surface, c.surface);
            c.range = range(a.range, c.range);
            c.n = a.n.or(c.n);
            c.step = a.step.or(c.step);
            solve_surface(&c, &mut out)?;
            out.finish("solve-surface", threads, vec![], &c)
        }
        Command::LengthSpectrum(a) => {
            let mut c = file.length_spectrum.clone().unwrap_or_default();
            c.surface = surface_flag(a.surface, c.surface);
            c.l_max = a.l_max.unwrap_or(c.l_max);
            lengths(&c, &mut out)?;
            out.finish("length-spectrum", threads, vec![], &c)
        }
        Command::Zeta(a) => {
            let mut c = selberg_config(&file, a.common);
            c.s = a.s.unwrap_or(c.s);
            let input = spectral_input(&c)?;
            let evals = c
                .s
                .iter()
                .map(|&s| zeta(&input, s, &c.zeta).with_context(|| format!("zeta({s})")))
                .collect::<anyhow::Result<Vec<_>>>()?;
            out.json("zeta.json", &evals)?;
            out.finish("zeta", threads, vec![], &c)
        }
        Command::Det(a) => {
            let c = selberg_config(&file, a);
            let input = spectral_input(&c)?;
            let d = log_det(&input, &c.zeta)?;
            out.json("det.json", &d)?;
            out.finish("det", threads, vec![], &c)
        }
        Command::VerifyHeat(a) => {
            let mut c = selberg_config(&file, a.common);
            c.t = a.t.unwrap_or(c.t);
            c.big_t = a.big_t.unwrap_or(c.big_t);
            c.n = a.n.or(c.n);
            verify_heat(&c, &mut out)?;
            out.finish("verify-heat", threads, vec![], &c)
        }
        Command::VerifyRiesz(a) => {
            let mut c = selberg_config(&file, a.common);
            c.remove = a.remove.unwrap_or(c.remove);
            verify_riesz(&c, &mut out)?;
            out.finish("verify-riesz", threads, vec![], &c)
        }
    }
}

fn parse_potential(s: &str) -> anyhow::Result<PotentialSpec> {
    if Potential::named(s).is_some() {
        return Ok(PotentialSpec::Named(s.to_string()));
    }
    let coeffs = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| config_error(format!("potential `{s}` is neither a built-in nor a coefficient list")))?;
    Ok(PotentialSpec::Coefficients(coeffs))
}

fn solve1d(c: &Solve1dConfig, out: &mut Outputs) -> anyhow::Result<()> {
    let p = Problem1D::new(c.half_length, c.potential.resolve()?);
    let ev = eigenvalues_1d(&p, c.range[0], c.range[1], c.step)?;
    let path = out.path("eigenvalues_1d.csv");
    let mut w = csv::Writer::from_path(&path)?;
    for e in &ev {
        w.serialize(e)?;
    }
    w.flush()?;
    Ok(())
}

fn solve_domain(c: &DomainConfig, out: &mut Outputs) -> anyhow::Result<()> {
    c.domain.validate().map_err(|e| config_error(e.to_string()))?;
    let recs = planar_find_eigenvalues(&c.domain, (c.range[0], c.range[1]), c.step, &c.planar)?;
    let path = out.path("planar_eigenvalues.csv");
    let mut w = csv::Writer::from_path(&path)?;
    for r in &recs {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn solve_surface(c: &SurfaceConfig, out: &mut Outputs) -> anyhow::Result<()> {
    let fnp = c.surface.resolve()?;
    let dec = assemble_surface(&fnp)?;
    let (lo, hi) = (c.range[0], c.range[1]);
    if !(lo >= 0.0 && hi > lo) {
        return Err(config_error("range needs 0 <= lo < hi"));
    }
    let recs = match c.n {
        Some(n) => {
            let basis = BasisSpec::new(n, dec.pieces.len());
            let coll = dec.collocate(default_density(&dec, &basis, hi, c.window.oversample))?;
            let step = c.step.unwrap_or_else(|| hypspec::surface_mps::default_step(hi));
            find_eigenvalues(&dec, &basis, &coll, (lo, hi), step, &c.search)?
        }
        None => find_eigenvalues_windowed(&dec, (lo, hi), &c.window, &c.search)?,
    };
    let path = out.path("eigenvalues.csv");
    let f = std::fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    write_eigenvalues(std::io::BufWriter::new(f), &recs)?;
    Ok(())
}

fn bolza_lengths(surface: &SurfaceSpec, l_max: f64) -> anyhow::Result<LengthSpectrum> {
    if !surface.is_bolza() {
        return Err(config_error(
            "length spectra are computed for the Bolza surface only; pass a length-spectrum file",
        ));
    }
    Ok(length_spectrum(&bolza_group(), l_max).map_err(|e| match e {
        hypspec::geometry::GeometryError::Intractable { .. } | hypspec::geometry::GeometryError::InvalidLength => {
            config_error(e.to_string())
        }
        e => e.into(),
    })?)
}

fn lengths(c: &LengthConfig, out: &mut Outputs) -> anyhow::Result<()> {
    let ls = bolza_lengths(&c.surface, c.l_max)?;
    let path = out.path("lengths.txt");
    let f = std::fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    ls.write(std::io::BufWriter::new(f))?;
    Ok(())
}

fn selberg_config(file: &RunConfig, a: SelbergArgs) -> SelbergConfig {
    let mut c = file.selberg.clone().unwrap_or_default();
    c.surface = surface_flag(a.surface, c.surface);
    c.genus = a.genus.or(c.genus);
    c.eigenvalues = a.eigenvalues.or(c.eigenvalues);
    c.lengths = a.lengths.or(c.lengths);
    c.l_max = a.l_max.unwrap_or(c.l_max);
    c.zeta.epsilon = a.epsilon.unwrap_or(c.zeta.epsilon);
    c.zeta.n_heat = a.n_heat.unwrap_or(c.zeta.n_heat);
    c
}

fn spectral_input(c: &SelbergConfig) -> anyhow::Result<SpectralInput> {
    let path = c
        .eigenvalues
        .as_ref()
        .ok_or_else(|| config_error("an eigenvalue CSV is required (--eigenvalues)"))?;
    let f = std::fs::File::open(path).map_err(|e| config_error(format!("cannot open {}: {e}", path.display())))?;
    let recs = read_eigenvalues(std::io::BufReader::new(f)).map_err(|e| config_error(format!("{}: {e}", path.display())))?;
    let ls = match &c.lengths {
        Some(p) => {
            let f = std::fs::File::open(p).map_err(|e| config_error(format!("cannot open {}: {e}", p.display())))?;
            LengthSpectrum::read(std::io::BufReader::new(f)).map_err(|e| config_error(format!("{}: {e}", p.display())))?
        }
        None => bolza_lengths(&c.surface, c.l_max)?,
    };
    let ev = recs.iter().map(|r| (r.lambda, r.multiplicity)).collect();
    let unc = recs.iter().map(|r| r.half_width).collect();
    SpectralInput::for_genus(c.genus()?, ev, ls)
        .and_then(|s| s.with_uncertainties(unc))
        .map_err(|e| config_error(e.to_string()))
}

#[derive(Serialize)]
struct HeatReport {
    n: usize,
    r_n_at_t: f64,
    crossover: f64,
    sign_changes: usize,
    heat_trace_at_t: hypspec::selberg::HeatTrace,
    certificate: Option<Certificate>,
    failure: Option<String>,
}

fn verify_heat(c: &SelbergConfig, out: &mut Outputs) -> anyhow::Result<()> {
    let input = spectral_input(c)?;
    let n = c.n.unwrap_or(input.expanded().len() - 1);
    let mu = input.truncated(n).map_err(|e| config_error(e.to_string()))?;
    let q = &c.zeta.quadrature;
    let ts = grid(c.heat_grid)?;
    let curve = r_n_curve(&input, n, &ts, q)?;
    out.plot("r_n", &format!("R_N(t), N = {n}"), "t", "R_N", &curve.samples)?;
    let at_t = r_n_curve(&input, n, &[c.t], q)?.samples[0].1;
    let (certificate, failure) = match completeness_certificate(
        &mu,
        input.vol,
        input.systole(),
        Some(&input.lengths),
        c.t,
        c.big_t,
        q,
    ) {
        Ok(cert) => (Some(cert), None),
        Err(hypspec::selberg::SelbergError::CertificateParameters) => {
            return Err(config_error(hypspec::selberg::SelbergError::CertificateParameters.to_string()))
        }
        Err(e @ hypspec::selberg::SelbergError::NoCertificate(_)) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let report = HeatReport {
        n,
        r_n_at_t: at_t,
        crossover: curve.crossover,
        sign_changes: curve.sign_changes(),
        heat_trace_at_t: heat_trace_geometric(c.t, &input, q)?,
        certificate,
        failure,
    };
    out.json("certificate.json", &report)
}

#[derive(Serialize)]
struct RieszReport {
    removed: Vec<f64>,
    max_abs_10_14: f64,
    weyl: hypspec::selberg::WeylFit,
}

fn verify_riesz(c: &SelbergConfig, out: &mut Outputs) -> anyhow::Result<()> {
    let input = spectral_input(c)?;
    let mut list = input.eigenvalues.clone();
    for &r in &c.remove {
        let i = list
            .iter()
            .position(|e| (e.0 - r).abs() < 1e-6 * r.max(1.0))
            .ok_or_else(|| config_error(format!("eigenvalue {r} is not in the list")))?;
        list[i].1 -= 1;
    }
    list.retain(|e| e.1 > 0);
    let ts = grid(c.riesz_grid)?;
    let f = riesz_test(input.vol, &list, &ts)?;
    out.plot("f_test", "Riesz-mean test function", "t", "F_test", &f)?;
    let max_abs_10_14 = riesz_test(input.vol, &list, &grid((10.0, 14.0, 401))?)?
        .iter()
        .map(|p| p.1.abs())
        .fold(0.0, f64::max);
    let report = RieszReport {
        removed: c.remove.clone(),
        max_abs_10_14,
        weyl: weyl_check(input.vol, &list)?,
    };
    out.json("riesz.json", &report)
}
