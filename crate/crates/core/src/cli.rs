//! Command-line jobs: argument definitions, input documents and the
//! structured or plain-text reports each subcommand prints.

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complexes::{FVector, Face, LabeledComplex};
use crate::error::{Error, Result};
use crate::finite::{FinitePointSet, GenericMode, GenericityReport};
use crate::geometry::{parse_rational, Orthant, Point};
use crate::oracle::{oracle_finite_nb, oracle_lattice_neighbors};
use crate::periodic::{
    neighbors_of_vertex, quotient_complex, star_of_vertex, validate_periodic_set, CompletenessReport,
    DmaxChoice, PeriodicSet, QuotientComplex, StarFaces,
};
use crate::posets::{FinitePoset, Layering};
use crate::resolution::{build_resolution, euler_characteristic, render_text, verify_chain, ChainCheck, Resolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Structured,
    Text,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "nbcomplex", version, about = "Exact neighbor complexes of finite and periodic point sets")]
pub struct JobSpec {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Structured, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct DmaxArgs {
    /// Bound on the dimension of the complex used by the search.
    #[arg(long, conflicts_with = "auto_dmax", required_unless_present = "auto_dmax")]
    pub dmax: Option<usize>,
    /// Double the bound from 1 until the report is certified.
    #[arg(long)]
    pub auto_dmax: bool,
}

impl DmaxArgs {
    fn choice(&self) -> DmaxChoice {
        match self.dmax {
            Some(d) if !self.auto_dmax => DmaxChoice::Fixed(d),
            _ => DmaxChoice::Auto,
        }
    }
}

fn parse_point(s: &str) -> std::result::Result<Point, String> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    s.split(',')
        .map(|c| parse_rational(c.trim()))
        .collect::<Result<Vec<_>>>()
        .map(Point::new)
        .map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Faces of the neighbor complex of a finite point set.
    FiniteNb {
        input: PathBuf,
        #[arg(long)]
        max_dim: Option<usize>,
        /// Also list the neighbors of this point, e.g. `1,-1/2`.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        vertex: Option<Point>,
        #[arg(long, value_parser = parse_generic_mode)]
        generic_mode: Option<GenericMode>,
    },
    /// Genericity test for a finite point set.
    GenericCheck {
        input: PathBuf,
        #[arg(long, value_parser = parse_generic_mode, default_value = "both")]
        generic_mode: GenericMode,
    },
    /// Dickson layers `S_0, ..., S_k` and the downset filter.
    Layers {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Sign pattern such as `+-+`; defaults to the componentwise order.
        #[arg(long, allow_hyphen_values = true)]
        orthant: Option<String>,
    },
    /// Scarf resolution of a generic monomial ideal given by exponents.
    ScarfResolve { input: PathBuf },
    /// Neighbors of a vertex of a periodic set.
    LatticeNeighbors {
        input: PathBuf,
        #[command(flatten)]
        dmax: DmaxArgs,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        vertex: Option<Point>,
    },
    /// Faces through a vertex of a periodic set.
    LatticeStar {
        input: PathBuf,
        #[command(flatten)]
        dmax: DmaxArgs,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        vertex: Option<Point>,
    },
    /// Faces of a periodic set up to lattice translation.
    Quotient {
        input: PathBuf,
        #[command(flatten)]
        dmax: DmaxArgs,
    },
    /// Compare the enumerators with brute force, on a file or on seeded
    /// random finite sets.
    Oracle {
        #[arg(required_unless_present = "random_trials")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        r_candidate: i64,
        #[arg(long, default_value_t = 14)]
        r_witness: i64,
        #[arg(long, conflicts_with = "input")]
        random_trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_generic_mode(s: &str) -> std::result::Result<GenericMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// One input document: either `points` or `basis` with optional `cosets`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cosets: Option<Vec<Point>>,
}

impl InputDoc {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: InputDoc = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        match (&doc.points, &doc.basis, &doc.cosets) {
            (Some(_), None, None) | (None, Some(_), _) => Ok(doc),
            (None, None, Some(_)) => Ok(doc),
            _ => Err(Error::Malformed("expected either \"points\" or \"basis\"/\"cosets\"".into())),
        }
    }

    fn finite(&self) -> Result<FinitePointSet> {
        match &self.points {
            Some(p) => FinitePointSet::new(p.clone()),
            None => Err(Error::Malformed("this command needs a \"points\" document".into())),
        }
    }

    fn periodic(&self) -> Result<PeriodicSet> {
        if self.points.is_some() {
            return Err(Error::Malformed("this command needs a \"basis\" document".into()));
        }
        validate_periodic_set(
            self.basis.as_deref().unwrap_or(&[]),
            self.cosets.as_deref().unwrap_or(&[]),
        )
    }

    fn is_lattice(&self) -> bool {
        self.points.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub dimension: isize,
    pub f_vector: FVector,
    pub faces: Vec<Face>,
}

impl From<&LabeledComplex> for ComplexDoc {
    fn from(c: &LabeledComplex) -> Self {
        ComplexDoc {
            dimension: c.dimension(),
            f_vector: c.f_vector(),
            faces: c.faces().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonVertex {
    pub point: Point,
    pub witness: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborList {
    pub vertex: Point,
    pub neighbors: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteNbReport {
    pub complex: ComplexDoc,
    pub facets: Vec<Face>,
    pub non_vertices: Vec<NonVertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neighbors: Option<NeighborList>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genericity: Option<GenericityReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayersReport {
    pub orthant: String,
    pub k: usize,
    pub layering: Layering,
    pub filtered: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScarfReport {
    pub resolution: Resolution,
    pub chain: ChainCheck,
    pub euler_characteristic: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeNeighborsReport {
    pub vertex: Point,
    pub neighbors: Vec<Point>,
    pub completeness: CompletenessReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeStarReport {
    pub star: StarFaces,
    pub completeness: CompletenessReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteOracleReport {
    pub agree: bool,
    pub oracle: ComplexDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeOracleReport {
    pub agree: bool,
    pub r_candidate: i64,
    pub r_witness: i64,
    pub oracle: Vec<Point>,
    /// Algorithm output restricted to the candidate box.
    pub algorithm: Vec<Point>,
    pub completeness: CompletenessReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomOracleReport {
    pub seed: u64,
    pub trials: usize,
    /// Point sets on which the enumerator and the oracle differ.
    pub disagreements: Vec<Vec<Point>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Output {
    FiniteNb(FiniteNbReport),
    GenericCheck(GenericityReport),
    Layers(LayersReport),
    ScarfResolve(ScarfReport),
    LatticeNeighbors(LatticeNeighborsReport),
    LatticeStar(LatticeStarReport),
    Quotient(QuotientComplex),
    OracleFinite(FiniteOracleReport),
    OracleLattice(LatticeOracleReport),
    OracleRandom(RandomOracleReport),
    Error(ErrorReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub exit_code: i32,
    pub message: String,
    pub error: Error,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_POSITIVITY: i32 = 3;
pub const EXIT_GENERICITY: i32 = 4;
pub const EXIT_INVARIANT: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::PositivityViolated { .. } => EXIT_POSITIVITY,
        Error::NotGeneric { .. } => EXIT_GENERICITY,
        Error::Invariant(_) | Error::UnboundedRegion(_) => EXIT_INVARIANT,
        _ => EXIT_MALFORMED,
    }
}

/// What a job prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: Output,
    pub rendered: String,
}

fn read_input(path: &PathBuf) -> Result<InputDoc> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Malformed(format!("stdin: {}", e)))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {}", path.display(), e)))?
    };
    InputDoc::parse(&text)
}

fn int_vertex(v: &Option<Point>, n: usize) -> Result<Vec<i64>> {
    match v {
        None => Ok(vec![0; n]),
        Some(p) => {
            p.check_dim(n)?;
            p.try_to_ints()
        }
    }
}

fn ints_to_points(v: &[Vec<i64>]) -> Vec<Point> {
    v.iter().map(|x| Point::from_ints(x)).collect()
}

/// Seeded random finite set: `n <= 4`, at most 7 points, coordinates in
/// `[0, 9]`.
pub fn random_finite_set(rng: &mut impl Rng) -> Vec<Point> {
    let n = rng.gen_range(1..=4);
    let card = rng.gen_range(1..=7);
    let mut pts: Vec<Point> = (0..card)
        .map(|_| Point::from_ints(&(0..n).map(|_| rng.gen_range(0..=9)).collect::<Vec<i64>>()))
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

fn execute(job: &JobSpec) -> Result<(Output, i32)> {
    match &job.command {
        Command::FiniteNb {
            input,
            max_dim,
            vertex,
            generic_mode,
        } => {
            let a = read_input(input)?.finite()?;
            let complex = a.enumerate_complex(*max_dim);
            let mut non_vertices = Vec::new();
            for p in a.points() {
                if let Some(w) = a.is_face(std::slice::from_ref(p))?.witness {
                    non_vertices.push(NonVertex {
                        point: p.clone(),
                        witness: w,
                    });
                }
            }
            let neighbors = match vertex {
                Some(v) => Some(NeighborList {
                    vertex: v.clone(),
                    neighbors: a.neighbors(v)?,
                }),
                None => None,
            };
            let report = FiniteNbReport {
                facets: complex.facets(),
                complex: ComplexDoc::from(&complex),
                non_vertices,
                neighbors,
                genericity: generic_mode.map(|m| a.is_generic(m)),
            };
            Ok((Output::FiniteNb(report), EXIT_OK))
        }
        Command::GenericCheck { input, generic_mode } => {
            let a = read_input(input)?.finite()?;
            let report = a.is_generic(*generic_mode);
            if report.modes_agree() == Some(false) {
                return Err(Error::Invariant("genericity modes disagree".into()));
            }
            Ok((Output::GenericCheck(report), EXIT_OK))
        }
        Command::Layers { input, k, orthant } => {
            let points = read_input(input)?.finite()?.points().to_vec();
            let n = points[0].dim();
            let order = match orthant {
                Some(s) => s.parse::<Orthant>()?,
                None => Orthant::positive(n),
            };
            let poset = FinitePoset::new(points, order)?;
            let report = LayersReport {
                orthant: poset.order().to_string(),
                k: *k,
                layering: poset.dickson_layers(*k),
                filtered: poset.filter_by_downset(*k),
            };
            Ok((Output::Layers(report), EXIT_OK))
        }
        Command::ScarfResolve { input } => {
            let a = read_input(input)?.finite()?;
            let resolution = build_resolution(&a)?;
            let chain = verify_chain(&resolution);
            let code = if chain.ok { EXIT_OK } else { EXIT_INVARIANT };
            let report = ScarfReport {
                euler_characteristic: euler_characteristic(&resolution),
                resolution,
                chain,
            };
            Ok((Output::ScarfResolve(report), code))
        }
        Command::LatticeNeighbors { input, dmax, vertex } => {
            let a = read_input(input)?.periodic()?;
            let v = int_vertex(vertex, a.dim())?;
            let (nb, report) = neighbors_of_vertex(&a, &v, dmax.choice())?;
            Ok((
                Output::LatticeNeighbors(LatticeNeighborsReport {
                    vertex: Point::from_ints(&v),
                    neighbors: ints_to_points(&nb),
                    completeness: report,
                }),
                EXIT_OK,
            ))
        }
        Command::LatticeStar { input, dmax, vertex } => {
            let a = read_input(input)?.periodic()?;
            let v = int_vertex(vertex, a.dim())?;
            let (star, report) = star_of_vertex(&a, &v, dmax.choice())?;
            Ok((
                Output::LatticeStar(LatticeStarReport {
                    star,
                    completeness: report,
                }),
                EXIT_OK,
            ))
        }
        Command::Quotient { input, dmax } => {
            let a = read_input(input)?.periodic()?;
            Ok((Output::Quotient(quotient_complex(&a, dmax.choice())?), EXIT_OK))
        }
        Command::Oracle {
            input,
            r_candidate,
            r_witness,
            random_trials,
            seed,
        } => {
            if let Some(trials) = random_trials {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut disagreements = Vec::new();
                for _ in 0..*trials {
                    let pts = random_finite_set(&mut rng);
                    let fast = FinitePointSet::new(pts.clone())?.enumerate_complex(None);
                    if fast != oracle_finite_nb(&pts)? {
                        disagreements.push(pts);
                    }
                }
                let code = if disagreements.is_empty() { EXIT_OK } else { EXIT_INVARIANT };
                let report = RandomOracleReport {
                    seed: *seed,
                    trials: *trials,
                    disagreements,
                };
                return Ok((Output::OracleRandom(report), code));
            }
            let doc = read_input(input.as_ref().expect("clap requires an input"))?;
            if doc.is_lattice() {
                let a = doc.periodic()?;
                let oracle = oracle_lattice_neighbors(&a, *r_candidate, *r_witness)?;
                let (nb, completeness) = neighbors_of_vertex(&a, &vec![0; a.dim()], DmaxChoice::Auto)?;
                let algorithm: Vec<Vec<i64>> = nb
                    .into_iter()
                    .filter(|b| b.iter().all(|x| x.abs() <= *r_candidate))
                    .collect();
                let agree = algorithm == oracle;
                let code = if agree || !completeness.certified { EXIT_OK } else { EXIT_INVARIANT };
                let report = LatticeOracleReport {
                    agree,
                    r_candidate: *r_candidate,
                    r_witness: *r_witness,
                    oracle: ints_to_points(&oracle),
                    algorithm: ints_to_points(&algorithm),
                    completeness,
                };
                Ok((Output::OracleLattice(report), code))
            } else {
                let a = doc.finite()?;
                let oracle = oracle_finite_nb(a.points())?;
                let agree = oracle == a.enumerate_complex(None);
                let code = if agree { EXIT_OK } else { EXIT_INVARIANT };
                let report = FiniteOracleReport {
                    agree,
                    oracle: ComplexDoc::from(&oracle),
                };
                Ok((Output::OracleFinite(report), code))
            }
        }
    }
}

/// Runs one job; never panics on bad input.
pub fn run(job: &JobSpec) -> Outcome {
    let (output, code) = match execute(job) {
        Ok(x) => x,
        Err(e) => {
            let code = exit_code(&e);
            (
                Output::Error(ErrorReport {
                    exit_code: code,
                    message: e.to_string(),
                    error: e,
                }),
                code,
            )
        }
    };
    let rendered = match job.format {
        Format::Structured => serde_json::to_string_pretty(&output).expect("reports serialize"),
        Format::Text => render_plain(&output),
    };
    Outcome { code, output, rendered }
}

fn face_line(f: &Face) -> String {
    let verts: Vec<String> = f.vertices.iter().map(ToString::to_string).collect();
    match &f.multidegree {
        Some(m) => format!("{{{}}} join {}", verts.join(", "), m),
        None => "{}".into(),
    }
}

fn points_line(ps: &[Point]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn completeness_lines(out: &mut String, r: &CompletenessReport) {
    let _ = writeln!(
        out,
        "dmax {} observed star dimension {} certified {}",
        r.dmax_used, r.observed_star_dimension, r.certified
    );
    for o in &r.orthants {
        let _ = writeln!(out, "  orthant {} candidates {} neighbors {}", o.orthant, o.candidates, o.neighbors);
    }
}

pub fn render_plain(output: &Output) -> String {
    let mut out = String::new();
    match output {
        Output::FiniteNb(r) => {
            let _ = writeln!(out, "dimension {}", r.complex.dimension);
            let _ = writeln!(out, "f-vector {:?}", r.complex.f_vector.counts);
            for f in &r.facets {
                let _ = writeln!(out, "facet {}", face_line(f));
            }
            for nv in &r.non_vertices {
                let _ = writeln!(out, "non-vertex {} below-witness {}", nv.point, nv.witness);
            }
            if let Some(nb) = &r.neighbors {
                let _ = writeln!(out, "neighbors of {}: {}", nb.vertex, points_line(&nb.neighbors));
            }
            if let Some(g) = &r.genericity {
                let _ = writeln!(out, "generic {}", g.generic);
            }
        }
        Output::GenericCheck(g) => {
            let _ = writeln!(out, "generic {}", g.generic);
            for (name, v) in [("definition", &g.definition), ("remark", &g.remark)] {
                if let Some(v) = v {
                    let _ = writeln!(out, "{} {} {:?}", name, v.generic, v.witness);
                }
            }
        }
        Output::Layers(r) => {
            for (i, l) in r.layering.layers.iter().enumerate() {
                let _ = writeln!(out, "S_{}: {}", i, points_line(l));
            }
            let _ = writeln!(out, "residual: {}", points_line(&r.layering.residual));
            let _ = writeln!(out, "downset size <= {}: {}", r.k + 1, points_line(&r.filtered));
        }
        Output::ScarfResolve(r) => {
            out.push_str(&render_text(&r.resolution));
            let _ = writeln!(out, "chain ok {} euler {}", r.chain.ok, r.euler_characteristic);
        }
        Output::LatticeNeighbors(r) => {
            let _ = writeln!(out, "neighbors of {}: {}", r.vertex, points_line(&r.neighbors));
            completeness_lines(&mut out, &r.completeness);
        }
        Output::LatticeStar(r) => {
            let _ = writeln!(out, "star of {} dimension {}", r.star.center, r.star.dimension);
            for f in &r.star.faces {
                let _ = writeln!(out, "  {}", face_line(f));
            }
            completeness_lines(&mut out, &r.completeness);
        }
        Output::Quotient(q) => {
            let _ = writeln!(out, "orbits by dimension {:?}", q.f_vector);
            for f in &q.faces {
                let _ = writeln!(out, "  {} orbit size {}", face_line(&f.representative), f.orbit_size);
            }
            for s in &q.stars {
                match &s.report {
                    Some(r) => completeness_lines(&mut out, r),
                    None => {
                        let _ = writeln!(out, "representative {} is not a vertex", s.representative);
                    }
                }
            }
        }
        Output::OracleFinite(r) => {
            let _ = writeln!(out, "agree {} faces {}", r.agree, r.oracle.faces.len());
        }
        Output::OracleLattice(r) => {
            let _ = writeln!(out, "agree {}", r.agree);
            let _ = writeln!(out, "oracle: {}", points_line(&r.oracle));
            completeness_lines(&mut out, &r.completeness);
        }
        Output::OracleRandom(r) => {
            let _ = writeln!(
                out,
                "seed {} trials {} disagreements {}",
                r.seed,
                r.trials,
                r.disagreements.len()
            );
        }
        Output::Error(e) => {
            let _ = writeln!(out, "error: {}", e.message);
        }
    }
    out
}
