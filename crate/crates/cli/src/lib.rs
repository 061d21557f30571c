//! Command-line front end for `grpd-core`.
//!
//! Inputs are text documents (see FORMATS.md). Structures are named
//! `FILE` or `FILE:NAME`; the bare form requires the file to define exactly
//! one structure of the expected kind. Files passed with `--lib` are loaded
//! first so that later documents may refer to their groupoids.
//!
//! Exit codes: 0 success or true, 1 false or none, 2 input error,
//! 3 internal limit exceeded.

pub mod report;

use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use grpd::bibundle::are_morita_equivalent_with_cap;
use grpd::complexity::WeakPointWitness;
use grpd::corpus::{groupoid_corpus, Bounds};
use grpd::homotopy::{are_morita_homotopy_equivalent_with_cap, DEFAULT_ISOTROPY_CAP};
use grpd::skeleton::skeletonize_with_cap;
use grpd::text::{write_bibundle, write_bundle, write_functor, write_groupoid};
use grpd::{
    are_homotopic, cgeo, check_cocycle, exists_deformation, glue, homotopy_pullback,
    is_weak_point_subgroupoid, locus_key, morita_point_check, orbits, relative_cgeo, tensor,
    Bibundle, CgeoReport, ComplexityError, DescentDatum, DescentError, ExtNat, FinGroupoid,
    HomotopyError, Library, Obj, PointCheck, StrictArrow, Subgroupoid, TextError, WeakPoint,
};

use report::*;

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "grpd",
    version,
    about = "Exact computations with finite groupoids"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Extra documents to load before the arguments.
    #[arg(long = "lib", global = true, value_name = "FILE")]
    pub libs: Vec<PathBuf>,
    /// Largest isotropy order handed to the group isomorphism search.
    #[arg(long, global = true, env = "GRPD_ISOTROPY_CAP", default_value_t = DEFAULT_ISOTROPY_CAP)]
    pub isotropy_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate every block of a document.
    Validate { file: PathBuf },
    /// List orbits with their isotropy orders.
    Orbits { groupoid: String },
    /// Decide transitivity, with the point equivalence when it holds.
    Transitive { groupoid: String },
    /// Print the skeletal canonical form.
    Skeleton { groupoid: String },
    /// Decide Morita equivalence, printing a bibundle equivalence.
    Morita { a: String, b: String },
    /// Decide Morita homotopy equivalence, printing a span.
    MoritaHomotopy { a: String, b: String },
    /// Geometric complexity.
    Cgeo { groupoid: String },
    /// Relative geometric complexity of an invariant subgroupoid.
    Relcgeo {
        groupoid: String,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<String>,
    },
    /// Decide whether an invariant subgroupoid is a weak point.
    Weakpoint {
        groupoid: String,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<String>,
    },
    /// Search for a deformation between two full subgroupoids.
    Deform {
        groupoid: String,
        #[arg(long, value_delimiter = ',', required = true)]
        from: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        to: Vec<String>,
    },
    /// Tensor product of two composable bibundles.
    Tensor { z1: String, z2: String },
    /// Decide whether two functors are naturally isomorphic.
    Homotopic { f: String, g: String },
    /// The n-th homotopy pullback of a cospan.
    Pullback {
        cospan: String,
        #[arg(long)]
        n: usize,
    },
    /// Glue a descent datum into a bundle.
    DescentGlue { datum: String },
    /// Check the cocycle conditions of a descent datum.
    DescentCheck { datum: String },
    /// Canonical key of the locus of a groupoid.
    Locus { groupoid: String },
    /// Write a seeded random corpus of groupoid documents.
    Corpus {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_objects: usize,
        #[arg(long, default_value_t = 6)]
        max_isotropy: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Text {
        path: String,
        source: Box<TextError>,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Complexity(#[from] ComplexityError),
    #[error(transparent)]
    Homotopy(HomotopyError),
    #[error(transparent)]
    Descent(#[from] DescentError),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl From<HomotopyError> for CliError {
    fn from(e: HomotopyError) -> Self {
        CliError::Homotopy(e)
    }
}

impl CliError {
    fn is_limit(&self) -> bool {
        match self {
            CliError::Homotopy(HomotopyError::IsotropyTooLarge { .. }) => true,
            CliError::Text { source, .. } => matches!(
                **source,
                TextError::Cospan {
                    source: HomotopyError::IsotropyTooLarge { .. },
                    ..
                }
            ),
            _ => false,
        }
    }

    fn witness(&self) -> Option<String> {
        match self {
            CliError::Text { source, .. } => match &**source {
                TextError::Groupoid { source, .. } => Some(format!("{source:?}")),
                TextError::Functor { source, .. } => Some(format!("{source:?}")),
                TextError::Bibundle { source, .. } => Some(format!("{source:?}")),
                TextError::Descent { source, .. } => Some(format!("{source:?}")),
                _ => None,
            },
            CliError::Homotopy(e) => Some(format!("{e:?}")),
            _ => None,
        }
    }
}

/// Which structures each loaded file contributed.
#[derive(Debug, Default, Clone)]
struct Contents {
    groupoids: Vec<String>,
    functors: Vec<String>,
    bibundles: Vec<String>,
    cospans: Vec<String>,
    data: Vec<String>,
}

struct Session {
    lib: Library,
    files: HashMap<PathBuf, Contents>,
}

impl Session {
    fn new() -> Self {
        Session {
            lib: Library::new(),
            files: HashMap::new(),
        }
    }

    fn load(&mut self, path: &Path) -> Result<Contents, CliError> {
        if let Some(c) = self.files.get(path) {
            return Ok(c.clone());
        }
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: shown.clone(),
            source,
        })?;
        let before = (
            self.lib.groupoids.len(),
            self.lib.functors.len(),
            self.lib.bibundles.len(),
            self.lib.cospans.len(),
            self.lib.data.len(),
        );
        self.lib.load_str(&text).map_err(|source| CliError::Text {
            path: shown,
            source: Box::new(source),
        })?;
        let l = &self.lib;
        let c = Contents {
            groupoids: l.groupoids[before.0..]
                .iter()
                .map(|g| g.name().to_string())
                .collect(),
            functors: l.functors[before.1..]
                .iter()
                .map(|(n, _)| n.clone())
                .collect(),
            bibundles: l.bibundles[before.2..]
                .iter()
                .map(|b| b.name().to_string())
                .collect(),
            cospans: l.cospans[before.3..]
                .iter()
                .map(|(n, _)| n.clone())
                .collect(),
            data: l.data[before.4..].iter().map(|(n, _)| n.clone()).collect(),
        };
        self.files.insert(path.to_path_buf(), c.clone());
        Ok(c)
    }

    /// Resolves `FILE` or `FILE:NAME` to a name of the given kind.
    fn resolve(
        &mut self,
        reference: &str,
        kind: &str,
        pick: fn(&Contents) -> &Vec<String>,
    ) -> Result<String, CliError> {
        let (path, name) = if Path::new(reference).exists() {
            (PathBuf::from(reference), None)
        } else if let Some((p, n)) = reference.rsplit_once(':') {
            (PathBuf::from(p), Some(n.to_string()))
        } else {
            (PathBuf::from(reference), None)
        };
        let contents = self.load(&path)?;
        let names = pick(&contents);
        match name {
            Some(n) => Ok(n),
            None if names.len() == 1 => Ok(names[0].clone()),
            None => Err(CliError::Input(format!(
                "{}: expected exactly one {kind}, found {}; use FILE:NAME",
                path.display(),
                names.len()
            ))),
        }
    }

    fn groupoid(&mut self, reference: &str) -> Result<Arc<FinGroupoid>, CliError> {
        let n = self.resolve(reference, "groupoid", |c| &c.groupoids)?;
        self.lib
            .groupoid(&n)
            .cloned()
            .ok_or_else(|| CliError::Input(format!("unknown groupoid `{n}`")))
    }

    fn functor(&mut self, reference: &str) -> Result<(String, StrictArrow), CliError> {
        let n = self.resolve(reference, "functor", |c| &c.functors)?;
        let f = self
            .lib
            .functor(&n)
            .cloned()
            .ok_or_else(|| CliError::Input(format!("unknown functor `{n}`")))?;
        Ok((n, f))
    }

    fn bibundle(&mut self, reference: &str) -> Result<Bibundle, CliError> {
        let n = self.resolve(reference, "bibundle", |c| &c.bibundles)?;
        self.lib
            .bibundle(&n)
            .cloned()
            .ok_or_else(|| CliError::Input(format!("unknown bibundle `{n}`")))
    }

    fn datum(&mut self, reference: &str) -> Result<(String, DescentDatum), CliError> {
        let n = self.resolve(reference, "datum", |c| &c.data)?;
        let d = self
            .lib
            .datum(&n)
            .cloned()
            .ok_or_else(|| CliError::Input(format!("unknown datum `{n}`")))?;
        Ok((n, d))
    }
}

fn objects(g: &FinGroupoid, ids: &[String]) -> Result<Vec<Obj>, CliError> {
    let mut out: Vec<Obj> = ids
        .iter()
        .map(|id| {
            g.object_by_name(id)
                .ok_or_else(|| CliError::Input(format!("unknown object `{id}` of `{}`", g.name())))
        })
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

fn obj_names(g: &FinGroupoid, xs: &[Obj]) -> Vec<String> {
    xs.iter().map(|&x| g.object_name(x).to_string()).collect()
}

fn certificate(g: &FinGroupoid, w: &WeakPoint) -> Certificate {
    match w {
        WeakPoint::Vacuous => Certificate {
            status: "vacuous".into(),
            base: None,
            isotropy_order: None,
        },
        WeakPoint::Witnessed(w) => {
            let w: &WeakPointWitness = w;
            Certificate {
                status: "witnessed".into(),
                base: Some(g.object_name(w.base).to_string()),
                isotropy_order: Some(g.isotropy_order(w.base)),
            }
        }
        WeakPoint::Refuted { .. } => Certificate {
            status: "refuted".into(),
            base: None,
            isotropy_order: None,
        },
    }
}

fn count(n: ExtNat) -> Count {
    match n {
        ExtNat::Finite(n) => Count::Finite(n),
        ExtNat::Infinite => Count::Infinite("inf".into()),
    }
}

fn cgeo_json(g: &FinGroupoid, r: &CgeoReport) -> CgeoJson {
    CgeoJson {
        groupoid: g.name().to_string(),
        cgeo: count(r.cgeo),
        cover: r.cover.iter().map(|c| obj_names(g, c)).collect(),
        certificates: r.certificates.iter().map(|w| certificate(g, w)).collect(),
    }
}

/// Output sink: either the text rendering or the JSON report.
struct Out<'a> {
    json: bool,
    w: &'a mut dyn Write,
}

impl Out<'_> {
    fn emit<T: Serialize>(
        &mut self,
        report: &T,
        text: impl FnOnce() -> String,
    ) -> Result<(), CliError> {
        if self.json {
            let s = serde_json::to_string_pretty(report).expect("reports serialize");
            writeln!(self.w, "{s}")?;
        } else {
            let t = text();
            write!(self.w, "{t}")?;
            if !t.is_empty() && !t.ends_with('\n') {
                writeln!(self.w)?;
            }
        }
        Ok(())
    }
}

fn decision(b: bool) -> i32 {
    if b {
        EXIT_TRUE
    } else {
        EXIT_FALSE
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_TRUE
            };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let json = cli.json;
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let limit = e.is_limit();
            let report = ErrorReport {
                kind: if limit { "limit" } else { "input" }.into(),
                error: e.to_string(),
                witness: e.witness(),
            };
            if json {
                let _ = writeln!(
                    stdout,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializes")
                );
            }
            let _ = writeln!(stderr, "error: {}", report.error);
            if let Some(w) = &report.witness {
                let _ = writeln!(stderr, "witness: {w}");
            }
            if limit {
                EXIT_LIMIT
            } else {
                EXIT_INPUT
            }
        }
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let mut s = Session::new();
    for p in &cli.libs {
        s.load(p)?;
    }
    let cap = cli.isotropy_cap;
    let mut out = Out {
        json: cli.json,
        w: stdout,
    };
    match cli.command {
        Command::Validate { file } => {
            s.load(&file)?;
            let l = &s.lib;
            let r = ValidateReport {
                groupoids: l
                    .groupoids
                    .iter()
                    .map(|g| GroupoidSummary {
                        name: g.name().to_string(),
                        objects: g.num_objects(),
                        arrows: g.num_arrows(),
                    })
                    .collect(),
                functors: l.functors.iter().map(|(n, _)| n.clone()).collect(),
                bibundles: l.bibundles.iter().map(|b| b.name().to_string()).collect(),
                cospans: l.cospans.iter().map(|(n, _)| n.clone()).collect(),
                covers: l.covers.iter().map(|(n, _)| n.clone()).collect(),
                bundles: l.bundles.iter().map(|(n, _)| n.clone()).collect(),
                data: l.data.iter().map(|(n, _)| n.clone()).collect(),
            };
            out.emit(&r, || {
                let mut t = String::new();
                for g in &r.groupoids {
                    t += &format!(
                        "groupoid {}: {} objects, {} arrows, valid\n",
                        g.name, g.objects, g.arrows
                    );
                }
                for (kind, names) in [
                    ("functor", &r.functors),
                    ("bibundle", &r.bibundles),
                    ("cospan", &r.cospans),
                    ("cover", &r.covers),
                    ("bundle", &r.bundles),
                    ("datum", &r.data),
                ] {
                    for n in names {
                        t += &format!("{kind} {n}: valid\n");
                    }
                }
                t
            })?;
            Ok(EXIT_TRUE)
        }
        Command::Orbits { groupoid } => {
            let g = s.groupoid(&groupoid)?;
            let part = orbits(&g);
            let r = OrbitsReport {
                groupoid: g.name().to_string(),
                orbits: part
                    .blocks
                    .iter()
                    .map(|b| OrbitEntry {
                        objects: obj_names(&g, b),
                        isotropy_order: g.isotropy_order(b[0]),
                    })
                    .collect(),
            };
            out.emit(&r, || {
                r.orbits
                    .iter()
                    .map(|o| {
                        format!(
                            "orbit {} isotropy {}\n",
                            o.objects.join(" "),
                            o.isotropy_order
                        )
                    })
                    .collect()
            })?;
            Ok(EXIT_TRUE)
        }
        Command::Transitive { groupoid } => {
            let g = s.groupoid(&groupoid)?;
            let check = morita_point_check(&g);
            let r = match &check {
                PointCheck::Point {
                    base,
                    bibundle,
                    point,
                } => TransitiveReport {
                    groupoid: g.name().to_string(),
                    transitive: true,
                    isotropy_order: Some(g.isotropy_order(*base)),
                    witness: None,
                    bibundle: Some(format!(
                        "{}\n{}",
                        write_groupoid(point),
                        write_bibundle(bibundle)
                    )),
                },
                PointCheck::NotTransitive { witness: (a, b) } => TransitiveReport {
                    groupoid: g.name().to_string(),
                    transitive: false,
                    isotropy_order: None,
                    witness: Some((g.object_name(*a).to_string(), g.object_name(*b).to_string())),
                    bibundle: None,
                },
                PointCheck::Empty => TransitiveReport {
                    groupoid: g.name().to_string(),
                    transitive: false,
                    isotropy_order: None,
                    witness: None,
                    bibundle: None,
                },
            };
            out.emit(&r, || match (&r.witness, &r.isotropy_order) {
                (_, Some(k)) => {
                    format!("true: equivalent to a point groupoid with isotropy of order {k}\n")
                }
                (Some((a, b)), _) => format!("false: no arrow {a} -> {b}\n"),
                _ => "false: empty groupoid\n".into(),
            })?;
            Ok(decision(r.transitive))
        }
        Command::Skeleton { groupoid } => {
            let g = s.groupoid(&groupoid)?;
            let sk = skeletonize_with_cap(&g, cap)?;
            let r = SkeletonReport {
                groupoid: g.name().to_string(),
                orbits: sk
                    .entries
                    .iter()
                    .map(|e| SkeletonLine {
                        base: e.base.clone(),
                        orbit_size: e.orbit_size,
                        hash: e.hash(),
                        group: e.key.clone(),
                    })
                    .collect(),
            };
            out.emit(&r, || sk.to_string())?;
            Ok(EXIT_TRUE)
        }
        Command::Morita { a, b } => {
            let (h, g) = (s.groupoid(&a)?, s.groupoid(&b)?);
            let w = are_morita_equivalent_with_cap(&h, &g, cap)?;
            let r = MoritaReport {
                source: h.name().to_string(),
                target: g.name().to_string(),
                equivalent: w.is_some(),
                witness: w.as_ref().map(write_bibundle),
            };
            out.emit(&r, || match &r.witness {
                Some(t) => format!("true\n{t}"),
                None => "false\n".into(),
            })?;
            Ok(decision(r.equivalent))
        }
        Command::MoritaHomotopy { a, b } => {
            let (k, g) = (s.groupoid(&a)?, s.groupoid(&b)?);
            let span = are_morita_homotopy_equivalent_with_cap(&k, &g, cap)?;
            let r = MoritaHomotopyReport {
                source: k.name().to_string(),
                target: g.name().to_string(),
                equivalent: span.is_some(),
                witness: span.as_ref().map(|sp| SpanWitness {
                    apex: write_groupoid(&sp.l),
                    left: write_functor("eta", &sp.eta),
                    right: write_functor("nu", &sp.nu),
                }),
            };
            out.emit(&r, || match &r.witness {
                Some(w) => format!("true\n{}\n{}\n{}", w.apex, w.left, w.right),
                None => "false\n".into(),
            })?;
            Ok(decision(r.equivalent))
        }
        Command::Cgeo { groupoid } => {
            let g = s.groupoid(&groupoid)?;
            let rep = cgeo(&g);
            let r = cgeo_json(&g, &rep);
            out.emit(&r, || format!("{}\n", rep.cgeo))?;
            Ok(EXIT_TRUE)
        }
        Command::Relcgeo { groupoid, subset } => {
            let g = s.groupoid(&groupoid)?;
            let h = Subgroupoid::invariant(&g, &objects(&g, &subset)?)?;
            let rep = relative_cgeo(&h, &g)?;
            let r = cgeo_json(&g, &rep);
            out.emit(&r, || format!("{}\n", rep.cgeo))?;
            Ok(EXIT_TRUE)
        }
        Command::Weakpoint { groupoid, subset } => {
            let g = s.groupoid(&groupoid)?;
            let objs = objects(&g, &subset)?;
            let u = Subgroupoid::invariant(&g, &objs)?;
            let w = is_weak_point_subgroupoid(&u, &g)?;
            let r = WeakPointReport {
                groupoid: g.name().to_string(),
                subset: obj_names(&g, &objs),
                weak_point: w.holds(),
                certificate: certificate(&g, &w),
                refuted_by: match &w {
                    WeakPoint::Refuted { a, b } => {
                        Some((g.object_name(*a).into(), g.object_name(*b).into()))
                    }
                    _ => None,
                },
            };
            out.emit(&r, || match (&r.refuted_by, &r.certificate.base) {
                (Some((a, b)), _) => format!("false: {a} and {b} lie in different orbits\n"),
                (_, Some(base)) => format!("true: retracts onto {base}\n"),
                _ => "true: empty subgroupoid\n".into(),
            })?;
            Ok(decision(r.weak_point))
        }
        Command::Deform { groupoid, from, to } => {
            let g = s.groupoid(&groupoid)?;
            let h = Subgroupoid::full(&g, &objects(&g, &from)?)?;
            let k = Subgroupoid::full(&g, &objects(&g, &to)?)?;
            let d = exists_deformation(&h, &k, &g)?;
            let r = DeformReport {
                groupoid: g.name().to_string(),
                from: obj_names(&g, &h.objects),
                to: obj_names(&g, &k.objects),
                deformation: d.is_some(),
                object_map: d
                    .iter()
                    .flat_map(|d| {
                        h.objects
                            .iter()
                            .enumerate()
                            .map(|(i, &x)| {
                                (
                                    g.object_name(x).to_string(),
                                    g.object_name(d.phi_ambient.obj(Obj(i))).to_string(),
                                )
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect(),
                transport: d
                    .iter()
                    .flat_map(|d| {
                        h.objects
                            .iter()
                            .enumerate()
                            .map(|(i, &x)| {
                                (
                                    g.object_name(x).to_string(),
                                    g.arrow_name(d.n_prime.component(Obj(i))).to_string(),
                                )
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect(),
            };
            out.emit(&r, || {
                if r.deformation {
                    let mut t = "true\n".to_string();
                    for ((x, y), (_, a)) in r.object_map.iter().zip(&r.transport) {
                        t += &format!("{x} -> {y} via {a}\n");
                    }
                    t
                } else {
                    "false\n".into()
                }
            })?;
            Ok(decision(r.deformation))
        }
        Command::Tensor { z1, z2 } => {
            let (a, b) = (s.bibundle(&z1)?, s.bibundle(&z2)?);
            let z = tensor(&a, &b)
                .map_err(|e| {
                    CliError::Input(format!(
                        "cannot tensor `{}` with `{}`: {e}",
                        a.name(),
                        b.name()
                    ))
                })?
                .with_name(format!("{}*{}", a.name(), b.name()));
            let r = TensorReport {
                source: z.source().name().to_string(),
                target: z.target().name().to_string(),
                carrier_size: z.len(),
                right_principal: z.is_right_principal(),
                equivalence: z.is_equivalence(),
                bibundle: write_bibundle(&z),
            };
            out.emit(&r, || r.bibundle.clone())?;
            Ok(EXIT_TRUE)
        }
        Command::Homotopic { f, g } => {
            let ((fname, f), (gname, g)) = (s.functor(&f)?, s.functor(&g)?);
            let t = are_homotopic(&f, &g)
                .map_err(|e| CliError::Input(format!("`{fname}` and `{gname}`: {e}")))?;
            let (d, c) = (f.dom(), f.cod());
            let r = HomotopicReport {
                source: fname,
                target: gname,
                homotopic: t.is_some(),
                components: t
                    .iter()
                    .flat_map(|t| {
                        d.objects()
                            .map(|x| {
                                (
                                    d.object_name(x).to_string(),
                                    c.arrow_name(t.component(x)).to_string(),
                                )
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect(),
            };
            out.emit(&r, || {
                if r.homotopic {
                    let mut t = "true\n".to_string();
                    for (x, a) in &r.components {
                        t += &format!("T({x}) = {a}\n");
                    }
                    t
                } else {
                    "false\n".into()
                }
            })?;
            Ok(decision(r.homotopic))
        }
        Command::Pullback { cospan, n } => {
            let name = s.resolve(&cospan, "cospan", |c| &c.cospans)?;
            let c = s
                .lib
                .cospan(&name)
                .cloned()
                .ok_or_else(|| CliError::Input(format!("unknown cospan `{name}`")))?;
            let p = homotopy_pullback(&c, n)?;
            let r = PullbackReport {
                cospan: name,
                n,
                objects: p.groupoid.num_objects(),
                arrows: p.groupoid.num_arrows(),
                groupoid: write_groupoid(&p.groupoid),
            };
            out.emit(&r, || r.groupoid.clone())?;
            Ok(EXIT_TRUE)
        }
        Command::DescentGlue { datum } => {
            let (name, d) = s.datum(&datum)?;
            let r = match glue(&d) {
                Ok(gl) => GlueReport {
                    datum: name.clone(),
                    glued: true,
                    failure: None,
                    bundle: Some(write_bundle(&format!("{name}-glued"), &gl.bundle)),
                },
                Err(DescentError::CocycleViolation(f)) => GlueReport {
                    datum: name,
                    glued: false,
                    failure: Some(f.to_string()),
                    bundle: None,
                },
                Err(e) => return Err(e.into()),
            };
            out.emit(&r, || match (&r.bundle, &r.failure) {
                (Some(b), _) => b.clone(),
                (_, Some(f)) => format!("not glued: {f}\n"),
                _ => String::new(),
            })?;
            Ok(decision(r.glued))
        }
        Command::DescentCheck { datum } => {
            let (name, d) = s.datum(&datum)?;
            let res = check_cocycle(&d);
            let r = DescentCheckReport {
                datum: name,
                cocycle: res.is_ok(),
                failure: res.err().map(|f| f.to_string()),
            };
            out.emit(&r, || match &r.failure {
                None => "true\n".into(),
                Some(f) => format!("false: {f}\n"),
            })?;
            Ok(decision(r.cocycle))
        }
        Command::Locus { groupoid } => {
            let g = s.groupoid(&groupoid)?;
            let r = LocusReport {
                groupoid: g.name().to_string(),
                key: locus_key(&g, cap)?,
            };
            out.emit(&r, || format!("{}\n", r.key))?;
            Ok(EXIT_TRUE)
        }
        Command::Corpus {
            seed,
            count,
            max_objects,
            max_isotropy,
        } => {
            if max_objects == 0 {
                return Err(CliError::Input("--max-objects must be positive".into()));
            }
            let bounds = Bounds {
                max_objects,
                max_isotropy: max_isotropy.max(1),
            };
            let r = CorpusReport {
                seed,
                count,
                groupoids: groupoid_corpus(seed, count, bounds, &format!("s{seed}g"))
                    .iter()
                    .map(write_groupoid)
                    .collect(),
            };
            out.emit(&r, || r.groupoids.join("\n"))?;
            Ok(EXIT_TRUE)
        }
    }
}
