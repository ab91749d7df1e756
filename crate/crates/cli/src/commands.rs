use std::path::{Path, PathBuf};

use serde::Serialize;
use tractable_core::io::{
    read_json, CodeFile, ComplexFile, CoverFile, GammaTableFile, ModelFile, RelationFile,
    SamplesFile, SystemFile,
};
use tractable_core::markov::{self, genericity_check, word_frequencies};
use tractable_core::rational::{self, Rational};
use tractable_core::shiftlike::{self, code_r, derive_gamma, shadow_q, PrefixMap, Word};
use tractable_core::simplicial1d::{
    nondegenerate_repair, roundoff, tractability_report_pl, SimplicialSystem1D,
};
use tractable_core::{Distribution, Error, MarkovMeasureSpec};

use crate::output::{csv_field, emit, json, out_dir, write_atomic, CliError};
use crate::{svg, Common, Format};

fn expect_format(c: &Common, allowed: &[Format]) -> Result<(), CliError> {
    if allowed.contains(&c.format) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--format {:?} is not supported by this command", c.format).to_lowercase()))
    }
}

#[derive(Serialize)]
struct RelationReport {
    elements: Vec<String>,
    /// Elements starting no infinite path.
    removed: Vec<String>,
    basic_sets: Vec<Vec<String>>,
    terminal: Vec<Vec<String>>,
    transient: Vec<String>,
    order: Vec<[usize; 2]>,
}

pub fn relation_analyze(input: &Path, c: &Common) -> Result<(), CliError> {
    expect_format(c, &[Format::Json])?;
    let g = read_json::<RelationFile>(input)?.build()?;
    let (kept, idx) = g.restrict_to_infinite_domain();
    if kept.is_empty() {
        return Err(Error::EmptyDomain.into());
    }
    let d = kept.basic_sets()?;
    let removed = (0..g.len())
        .filter(|i| idx.binary_search(i).is_err())
        .map(|i| g.label(i).to_string())
        .collect();
    let report = RelationReport {
        elements: g.elements().to_vec(),
        removed,
        basic_sets: (0..d.len()).map(|cl| d.class_labels(&kept, cl)).collect(),
        terminal: d.terminal_classes().map(|cl| d.class_labels(&kept, cl)).collect(),
        transient: d.transient().iter().map(|&v| kept.label(v).to_string()).collect(),
        order: d.order().iter().map(|&(a, b)| [a, b]).collect(),
    };
    emit(c.out.as_deref(), &json(&report))
}

pub fn relation_compose(input: &Path, then: &Path, c: &Common) -> Result<(), CliError> {
    expect_format(c, &[Format::Json])?;
    let r = read_json::<RelationFile>(input)?.build()?;
    let s = read_json::<RelationFile>(then)?.build()?;
    let composed = r.compose(&s)?;
    emit(c.out.as_deref(), &json(&RelationFile::from_relation(&composed)))
}

pub fn subshift_report(input: &Path, simulate: Option<usize>, words: usize, c: &Common) -> Result<(), CliError> {
    expect_format(c, &[Format::Json, Format::Csv])?;
    let cover = read_json::<CoverFile>(input)?.build()?;
    let uniform = Distribution::uniform(cover.len());
    let mut report = markov::tractability_report_subshift(&cover, &uniform)?;
    let d = cover.relation().basic_sets()?;
    let path = simulate.map(|t| MarkovMeasureSpec::new(cover.clone(), uniform).map(|spec| spec.sample_path(t, c.seed)));
    let path = path.transpose()?;
    if c.format == Format::Csv {
        let path = path.ok_or_else(|| CliError::Usage("--format csv needs --simulate T".into()))?;
        let g = cover.relation();
        let ending = d.class_of(*path.last().expect("T ≥ 1")).filter(|&cl| d.is_terminal(cl));
        let measure = ending.map(|cl| markov::ergodic_measure_spec(&cover, &d, cl)).transpose()?;
        let mut csv = String::from("length,word,frequency,measure\n");
        for (len, table) in word_frequencies(&path, words).iter().enumerate() {
            for (word, freq) in table {
                let label: Vec<&str> = word.iter().map(|&s| g.label(s)).collect();
                let mu = measure.as_ref().map(|m| m.cylinder(word).to_string()).unwrap_or_default();
                csv.push_str(&format!("{},{},{freq},{mu}\n", len + 1, csv_field(&label.join(" "))));
            }
        }
        return emit(c.out.as_deref(), &csv);
    }
    if let Some(path) = path {
        report.genericity = Some(genericity_check(&cover, &d, &path, words)?);
    }
    emit(c.out.as_deref(), &json(&report))
}

#[derive(Serialize)]
struct PairReport {
    b: Vec<String>,
    bstar: Vec<String>,
    terminal: bool,
}

pub fn model_correspondence(input: &Path, c: &Common) -> Result<(), CliError> {
    expect_format(c, &[Format::Json])?;
    let model = read_json::<ModelFile>(input)?.build()?;
    let corr = model.basic_set_correspondence()?;
    let pairs: Vec<PairReport> = corr
        .pairs
        .iter()
        .map(|p| PairReport {
            b: p.b.iter().map(|&s| model.k()[s].clone()).collect(),
            bstar: p.bstar.iter().map(|&t| model.kstar()[t].clone()).collect(),
            terminal: p.terminal,
        })
        .collect();
    emit(c.out.as_deref(), &json(&pairs))
}

pub fn blockmap_approx(
    input: &Path,
    n: usize,
    prefix: Option<&str>,
    depth: usize,
    c: &Common,
) -> Result<(), CliError> {
    expect_format(c, &[Format::Json])?;
    let code = read_json::<CodeFile>(input)?.build()?;
    let sys = derive_gamma(&code, n)?;
    let mut report = shiftlike::tractability_report_shiftlike(&sys)?;
    if code.window() == 1 {
        report.notes.push("window m = 1: k is set to 1".into());
    }
    let shadow = match prefix {
        Some(text) => {
            let x = Word::parse(code.base(), text)?;
            let y = shadow_q(&code, &sys, &x, depth)?;
            let fs = code_r(&code, sys.window(), &x, depth)?;
            let gs = sys.code_r(&y, depth)?;
            let mut csv = String::from("j,f_window,g_window\n");
            for (j, (a, b)) in fs.iter().zip(&gs).enumerate() {
                csv.push_str(&format!("{j},{a},{b}\n"));
            }
            Some((y, csv))
        }
        None => None,
    };
    if let Some((y, _)) = &shadow {
        report.notes.push(format!("shadowing prefix y = {y} for depth {depth}"));
    }
    let dir = out_dir(c.out.as_deref())?;
    write_atomic(&dir.join("gamma.json"), &json(&GammaTableFile::from_system(&sys)))?;
    write_atomic(&dir.join("report.json"), &json(&report))?;
    let mut cylinders = String::from("class,cylinder,weight,density\n");
    for m in &report.measures {
        let class = csv_field(&m.class.join(" "));
        for e in &m.density {
            cylinders.push_str(&format!(
                "{class},{},{},{}\n",
                e.cylinder.as_deref().unwrap_or(""),
                e.weight,
                e.density.as_deref().unwrap_or("")
            ));
        }
    }
    write_atomic(&dir.join("cylinders.csv"), &cylinders)?;
    if let Some((_, csv)) = shadow {
        write_atomic(&dir.join("shadow.csv"), &csv)?;
    }
    Ok(())
}

pub enum PlSource {
    System(PathBuf),
    Samples { complex: PathBuf, samples: PathBuf },
}

pub fn plmap_approx(source: &PlSource, repair: bool, c: &Common) -> Result<(), CliError> {
    expect_format(c, &[Format::Json, Format::Svg])?;
    let mut notes = Vec::new();
    let sys = match source {
        PlSource::System(path) => {
            let map = read_json::<SystemFile>(path)?.build()?;
            if repair && map.is_degenerate() {
                let mesh = map.k().mesh();
                notes.push(format!(
                    "degenerate vertex map repaired: moved by at most mesh(K) = {}; with roundoff the total stays within 4·mesh(K) = {}",
                    rational::format(&mesh),
                    rational::format(&(Rational::from_integer(4.into()) * &mesh))
                ));
                nondegenerate_repair(&map)?
            } else {
                SimplicialSystem1D::new(map)?
            }
        }
        PlSource::Samples { complex, samples } => {
            let k = read_json::<ComplexFile>(complex)?.build()?;
            let f = read_json::<SamplesFile>(samples)?.build(&k)?;
            let r = roundoff(|x| f.eval(x), &f.lipschitz, &k)?;
            let mesh = k.mesh();
            let factor = if r.repaired { 4 } else { 2 };
            notes.push(format!(
                "rounded off from {} samples with Lipschitz bound {}{}: sup |f − g| ≤ {factor}·mesh(K) = {}",
                f.points().len(),
                rational::format(&f.lipschitz),
                if r.repaired { ", then repaired" } else { "" },
                rational::format(&(Rational::from_integer(factor.into()) * &mesh))
            ));
            r.system
        }
    };
    let k = sys.k();
    let total = rational::to_f64(&(k.right() - k.left()));
    let lengths: Vec<f64> = (0..k.edge_count()).map(|e| rational::to_f64(&k.edge_len(e)) / total).collect();
    let mut report = tractability_report_pl(&sys, &Distribution::new(lengths)?)?;
    report.notes.extend(notes);
    let dir = out_dir(c.out.as_deref())?;
    let plot = svg::plot(&sys, &report)?;
    if c.format == Format::Svg {
        return write_atomic(&dir.join("plot.svg"), &plot);
    }
    write_atomic(&dir.join("system.json"), &json(&SystemFile::from_map(sys.map())))?;
    write_atomic(&dir.join("report.json"), &json(&report))?;
    write_atomic(&dir.join("plot.svg"), &plot)
}
