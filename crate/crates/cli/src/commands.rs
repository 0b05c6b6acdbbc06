use std::fs;
use std::io::Write;

use gspectra::format::g17;
use gspectra::genmodels::{
    generate_ab, generate_al, generate_color, write_colored_edge_list, AbParams, AlParams, ColorParams, ForbiddenLink,
};
use gspectra::netcore::{
    default_swap_count, degree_distribution, filter_min_outdegree, fit_loglog_slope_default, load_edge_list,
    maslov_randomize_with, reciprocity, write_edge_list, Direction, LoadOptions, NodeMapping,
};
use gspectra::ranking::{
    decay_exponent_default, fidelity_grid, pagerank_power, par_vs_alpha, participation_ratio, write_par_curve,
};
use gspectra::spectra::{
    degeneracy_clusters, density_of_states, eigendecompose, eigenvector_pars, relaxation_rates, second_modulus,
    truncated_spectrum_compare, DosOptions, TruncationOptions, DEFAULT_ZERO_CUTOFF,
};
use gspectra::{DirectedGraph, GoogleMatrix};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::manifest::{sha256_hex, FileDigest, Run};
use crate::{AbArgs, Failure, Forbidden, InputArgs, Model, OutArgs, RankArgs};

struct Loaded {
    graph: DirectedGraph,
    digest: FileDigest,
    mapping: Option<NodeMapping>,
}

fn load(input: &InputArgs) -> Result<Loaded, Failure> {
    let path = &input.input;
    let bytes = fs::read(path).map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
    let opts = LoadOptions {
        index_base: input.index_base,
        dedupe: !input.keep_duplicates,
        allow_self_loops: !input.drop_self_loops,
    };
    let graph = load_edge_list(&bytes[..], opts).map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })?;
    let digest = FileDigest {
        path: path.display().to_string(),
        sha256: sha256_hex(&bytes),
    };
    if input.filter_dangling {
        let (graph, mapping) = filter_min_outdegree(&graph)?;
        return Ok(Loaded {
            graph,
            digest,
            mapping: Some(mapping),
        });
    }
    Ok(Loaded {
        graph,
        digest,
        mapping: None,
    })
}

fn input_params(input: &InputArgs) -> Value {
    json!({
        "input": input.input.display().to_string(),
        "index_base": input.index_base,
        "keep_duplicates": input.keep_duplicates,
        "drop_self_loops": input.drop_self_loops,
        "filter_dangling": input.filter_dangling,
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

/// Starts a run for a command that reads one input graph.
fn start(
    command: &str,
    input: &InputArgs,
    out: &OutArgs,
    threads: Option<usize>,
    params: Value,
) -> Result<(Run, DirectedGraph), Failure> {
    let loaded = load(input)?;
    let mut run = Run::new(&out.out_dir, command, merge(input_params(input), params), threads)?;
    run.inputs.push(loaded.digest);
    if let Some(mapping) = &loaded.mapping {
        run.write("node_map.csv", |w| {
            writeln!(w, "new_id,node_id")?;
            for (new, old) in mapping.kept().iter().enumerate() {
                writeln!(w, "{new},{old}")?;
            }
            Ok(())
        })?;
    }
    Ok((run, loaded.graph))
}

fn graph_summary(g: &DirectedGraph) -> Value {
    json!({
        "n_nodes": g.n_nodes(),
        "n_edges": g.n_edges(),
        "dangling_nodes": g.dangling_count(),
    })
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub struct SpectrumOptions {
    pub alpha: f64,
    pub tol: f64,
    pub dense_limit: usize,
    pub zero_cutoff: f64,
    pub degeneracy_tol: f64,
    pub dos_window: f64,
}

pub fn spectrum(input: &InputArgs, out: &OutArgs, threads: Option<usize>, o: SpectrumOptions) -> Result<(), Failure> {
    let params = json!({
        "alpha": o.alpha,
        "tol": o.tol,
        "dense_limit": o.dense_limit,
        "zero_cutoff": o.zero_cutoff,
        "degeneracy_tol": o.degeneracy_tol,
        "dos_window": o.dos_window,
    });
    let (mut run, g) = start("spectrum", input, out, threads, params)?;
    let dense = GoogleMatrix::from_graph(&g, o.alpha)?.materialize_dense(o.dense_limit)?;
    let spec = eigendecompose(&dense, o.tol)?;
    let rates = relaxation_rates(spec.eigenvalues(), o.zero_cutoff);
    let dos = density_of_states(
        &rates,
        DosOptions {
            window: o.dos_window,
            ..DosOptions::default()
        },
    )?;
    let degeneracies = degeneracy_clusters(spec.eigenvalues(), o.degeneracy_tol);
    let pars = eigenvector_pars(&spec, o.zero_cutoff)?;

    run.write("eigenvalues.csv", |w| spec.write_csv(o.zero_cutoff, w))?;
    run.write("dos.csv", |w| dos.write_csv(w))?;
    run.write("degeneracy.csv", |w| degeneracies.write_csv(w))?;
    run.write("eigvec_par.csv", |w| {
        writeln!(w, "gamma,par")?;
        for (gamma, xi) in &pars {
            writeln!(w, "{},{}", g17(*gamma), g17(*xi))?;
        }
        Ok(())
    })?;
    let results = merge(
        graph_summary(&g),
        json!({
            "max_residual": spec.max_residual(),
            "frobenius_norm": spec.frobenius_norm(),
            "second_modulus": second_modulus(spec.eigenvalues()),
            "unit_multiplicity": degeneracies.multiplicity_at(Complex64::new(1.0, 0.0)),
            "zero_modes": rates.zero_modes,
        }),
    );
    run.finish(results)
}

pub fn pagerank(
    input: &InputArgs,
    out: &OutArgs,
    threads: Option<usize>,
    alpha: f64,
    rank: &RankArgs,
) -> Result<(), Failure> {
    let params = json!({ "alpha": alpha, "tol": rank.tol, "max_iter": rank.max_iter });
    let (mut run, g) = start("pagerank", input, out, threads, params)?;
    let r = pagerank_power(&GoogleMatrix::from_graph(&g, alpha)?, rank.tol, rank.max_iter);
    run.write("pagerank.csv", |w| r.write_csv(w))?;
    let results = merge(
        graph_summary(&g),
        json!({
            "iterations": r.iterations,
            "residual": r.residual,
            "converged": r.converged,
            "participation_ratio": participation_ratio(&r.values).ok(),
            "decay_exponent": decay_exponent_default(&r).ok(),
        }),
    );
    run.finish(results)?;
    if !r.converged {
        return Err(Failure::numerical(format!(
            "power iteration stopped after {} iterations with L1 change {:e}",
            r.iterations, r.residual
        )));
    }
    Ok(())
}

pub fn fidelity(
    input: &InputArgs,
    out: &OutArgs,
    threads: Option<usize>,
    alphas: &[f64],
    rank: &RankArgs,
) -> Result<(), Failure> {
    let params = json!({ "alphas": alphas, "tol": rank.tol, "max_iter": rank.max_iter });
    let (mut run, g) = start("fidelity", input, out, threads, params)?;
    let grid = fidelity_grid(&g, alphas, rank.tol, rank.max_iter)?;
    run.write("fidelity.csv", |w| grid.write_csv(w))?;
    run.finish(merge(graph_summary(&g), json!({ "converged": grid.converged })))?;
    if !grid.converged {
        return Err(Failure::numerical("a PageRank of the grid did not converge"));
    }
    Ok(())
}

pub fn par_curve(
    input: &InputArgs,
    out: &OutArgs,
    threads: Option<usize>,
    alphas: &[f64],
    rank: &RankArgs,
) -> Result<(), Failure> {
    let params = json!({ "alphas": alphas, "tol": rank.tol, "max_iter": rank.max_iter });
    let (mut run, g) = start("par-curve", input, out, threads, params)?;
    let points = par_vs_alpha(&g, alphas, rank.tol, rank.max_iter)?;
    run.write("par_curve.csv", |w| write_par_curve(&points, w))?;
    let converged = points.iter().all(|p| p.converged);
    run.finish(merge(graph_summary(&g), json!({ "converged": converged })))?;
    if !converged {
        return Err(Failure::numerical("a PageRank of the curve did not converge"));
    }
    Ok(())
}

fn ab_params(a: &AbArgs) -> AbParams {
    AbParams {
        allow_self_loops: a.self_loops,
        bidirectional_seed: !a.ring_seed,
        max_retries: a.max_retries,
        ..AbParams::new(a.n, a.m, a.p, a.q, a.seed)
    }
}

fn write_params<T: serde::Serialize>(run: &mut Run, params: &T) -> Result<(), Failure> {
    run.write("params.json", |w| {
        serde_json::to_writer_pretty(&mut *w, params).map_err(std::io::Error::from)?;
        writeln!(w)?;
        Ok(())
    })
}

pub fn generate(model: Model, threads: Option<usize>) -> Result<(), Failure> {
    match model {
        Model::Ab { ab, out } => {
            let params = ab_params(&ab);
            let mut run = Run::new(
                &out.out_dir,
                "generate ab",
                serde_json::to_value(&params).unwrap(),
                threads,
            )?;
            run.seed = Some(params.seed);
            let g = generate_ab(&params)?;
            run.write("graph.edges", |w| write_edge_list(&g, w))?;
            write_params(&mut run, &params)?;
            run.finish(graph_summary(&g))
        }
        Model::Color {
            ab,
            out,
            eta,
            epsilon,
            initial_colors,
            forbidden,
        } => {
            let params = ColorParams {
                initial_colors,
                forbidden: match forbidden {
                    Forbidden::Omit => ForbiddenLink::Omit,
                    Forbidden::Redraw => ForbiddenLink::Redraw,
                },
                ..ColorParams::new(ab_params(&ab), eta, epsilon)
            };
            let mut run = Run::new(
                &out.out_dir,
                "generate color",
                serde_json::to_value(&params).unwrap(),
                threads,
            )?;
            run.seed = Some(params.ab.seed);
            let cg = generate_color(&params)?;
            run.write("graph.edges", |w| write_colored_edge_list(&cg, w))?;
            write_params(&mut run, &params)?;
            run.finish(merge(graph_summary(&cg.graph), json!({ "n_colors": cg.n_colors })))
        }
        Model::Al { n, m, seed, out } => {
            let params = AlParams::new(n, m, seed);
            let mut run = Run::new(
                &out.out_dir,
                "generate al",
                serde_json::to_value(&params).unwrap(),
                threads,
            )?;
            run.seed = Some(seed);
            let g = generate_al(&params)?;
            run.write("graph.edges", |w| write_edge_list(&g, w))?;
            write_params(&mut run, &params)?;
            run.finish(graph_summary(&g))
        }
    }
}

pub fn randomize(
    input: &InputArgs,
    out: &OutArgs,
    threads: Option<usize>,
    swaps: Option<usize>,
    seed: u64,
    allow_self_loops: bool,
) -> Result<(), Failure> {
    let params = json!({ "swaps": swaps, "allow_self_loops": allow_self_loops });
    let (mut run, g) = start("randomize", input, out, threads, params)?;
    run.seed = Some(seed);
    let swaps = swaps.unwrap_or_else(|| default_swap_count(&g));
    let r = maslov_randomize_with(&g, swaps, seed, allow_self_loops)?;
    run.write("randomized.edges", |w| write_edge_list(&r, w))?;
    let moved = g.edges().iter().zip(r.edges()).filter(|(a, b)| a != b).count();
    run.finish(merge(
        graph_summary(&r),
        json!({ "swap_attempts": swaps, "edges_changed": moved }),
    ))
}

pub fn degree_dist(input: &InputArgs, out: &OutArgs, threads: Option<usize>) -> Result<(), Failure> {
    let (mut run, g) = start("degree-dist", input, out, threads, json!({}))?;
    let din = degree_distribution(&g, Direction::In);
    let dout = degree_distribution(&g, Direction::Out);
    run.write("degree_in.csv", |w| din.write_csv(w))?;
    run.write("degree_out.csv", |w| dout.write_csv(w))?;
    let results = merge(
        graph_summary(&g),
        json!({
            "mean_degree": din.mean_degree,
            "in_slope": fit_loglog_slope_default(&din).ok().map(finite),
            "out_slope": fit_loglog_slope_default(&dout).ok().map(finite),
            "reciprocity": reciprocity(&g),
        }),
    );
    run.finish(results)
}

pub fn truncate_spectrum(
    input: &InputArgs,
    out: &OutArgs,
    threads: Option<usize>,
    alpha: f64,
    sizes: &[usize],
    opts: TruncationOptions,
) -> Result<(), Failure> {
    let params = json!({
        "alpha": alpha,
        "sizes": sizes,
        "rank_alpha": opts.rank_alpha,
        "tol": opts.eigen_tol,
        "dense_limit": opts.dense_limit,
    });
    let (mut run, g) = start("truncate-spectrum", input, out, threads, params)?;
    let report = truncated_spectrum_compare(&g, alpha, sizes, opts)?;
    run.write("eigenvalues_full.csv", |w| {
        report.full.write_csv(DEFAULT_ZERO_CUTOFF, w)
    })?;
    for t in &report.truncated {
        run.write(&format!("eigenvalues_m{}.csv", t.m), |w| {
            t.spectrum.write_csv(DEFAULT_ZERO_CUTOFF, w)
        })?;
        run.write(&format!("kept_m{}.csv", t.m), |w| {
            writeln!(w, "new_id,node_id")?;
            for (new, old) in t.kept.iter().enumerate() {
                writeln!(w, "{new},{old}")?;
            }
            Ok(())
        })?;
    }
    run.write("truncation.csv", |w| {
        writeln!(w, "m,hausdorff")?;
        for t in &report.truncated {
            writeln!(w, "{},{}", t.m, g17(t.hausdorff))?;
        }
        Ok(())
    })?;
    run.finish(graph_summary(&g))
}
