//! Command definitions and dispatch. Every handler returns the fully
//! rendered output string; `--json` switches from aligned text to a single
//! compact JSON line.

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use k3lat::discform::{self, FiniteQuadraticForm};
use k3lat::lattice::{glue_check, transcendental_cokernel, Sublattice};
use k3lat::mat::{self, IntMat};
use k3lat::mukai::{self, HyperbolicWitness};
use k3lat::{BmConfig, IntegralLattice, K3Model, SectionSearch};

use crate::report::*;
use crate::schema::*;
use crate::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "k3lat",
    version,
    about = "Exact arithmetic for even lattices, discriminant forms, and K3 moduli invariants",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lattice computations
    #[command(subcommand)]
    Lat(LatCmd),
    /// Moduli-space report for a Mukai vector on a K3 model
    Moduli(ModuliArgs),
    /// Beauville-Mukai system report for a curve class
    Bm(BmArgs),
    /// Extended-Mukai discriminants separating Pic^{g-1} and Pic^g
    Extmukai(ExtArgs),
    /// Structure verifiers on unimodular ambient lattices
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
pub enum LatCmd {
    /// Rank, determinant, signature, and Gram matrix
    Info(LatticeArg),
    /// Smith normal form of an integer matrix
    Snf(SnfArgs),
    /// Discriminant form, optionally negated or evaluated at an element
    Disc(DiscArgs),
    /// Saturated orthogonal complement of a spanned sublattice
    Comp(BasisArgs),
    /// Saturation of a spanned sublattice
    Sat(BasisArgs),
    /// Divisibility and primitivity of a vector
    Div(DivArgs),
    /// Orbit equivalence of two vectors under isometries acting
    /// trivially on the discriminant group
    Orbit(OrbitArgs),
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Discriminant glue map of a primitive sublattice: A_T(-1) = A_N
    Glue(BasisArgs),
    /// Pairing-congruence cokernel: index equals the divisibility
    Cokernel(CokernelArgs),
    /// Elementwise anti-isometry of two discriminant forms under a map
    Anti(AntiArgs),
}

#[derive(Args, Debug)]
pub struct LatticeArg {
    /// Lattice JSON (inline or file)
    #[arg(long)]
    pub lattice: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SnfArgs {
    /// Integer matrix as JSON rows (inline or file)
    #[arg(long, conflicts_with = "lattice")]
    pub matrix: Option<String>,
    /// Lattice JSON; its Gram matrix is used
    #[arg(long)]
    pub lattice: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct DiscArgs {
    #[arg(long)]
    pub lattice: String,
    /// Report the (-1)-twisted form instead
    #[arg(long)]
    pub negate: bool,
    /// Rational coordinates in L (x) Q; reduced to a class of the form
    #[arg(long)]
    pub element: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct BasisArgs {
    #[arg(long)]
    pub lattice: String,
    /// Basis vectors as JSON rows (inline or file)
    #[arg(long)]
    pub basis: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct DivArgs {
    #[arg(long)]
    pub lattice: String,
    /// Vector as a JSON integer array
    #[arg(long)]
    pub v: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct OrbitArgs {
    #[arg(long)]
    pub lattice: String,
    #[arg(long)]
    pub v: String,
    #[arg(long)]
    pub u: String,
    /// Four vectors spanning two orthogonal hyperbolic planes
    #[arg(long)]
    pub witness: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct CokernelArgs {
    #[arg(long)]
    pub lattice: String,
    #[arg(long)]
    pub basis: String,
    /// Vector in the coordinates of the given basis
    #[arg(long)]
    pub v: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct AntiArgs {
    /// Lattice whose discriminant form is the source
    #[arg(long)]
    pub a: String,
    /// Lattice whose discriminant form is the target
    #[arg(long)]
    pub b: String,
    /// Generator images as JSON rows of target coefficients
    #[arg(long)]
    pub map: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ModuliArgs {
    /// K3 model JSON: {"ns_gram": [[...]], "ample": [...]?}
    #[arg(long)]
    pub model: String,
    /// Mukai vector JSON: {"r": int, "E": [...], "s": int}
    #[arg(long)]
    pub v: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct BmArgs {
    /// Config JSON: {"ns_gram": [[...]], "H": [...]}
    #[arg(long)]
    pub config: String,
    /// Degree of the system
    #[arg(long)]
    pub d: Option<i64>,
    /// Second degree, for equivalence and birationality
    #[arg(long, requires = "d")]
    pub e: Option<i64>,
    /// Box bound for divisor and section searches
    #[arg(long, default_value_t = 3)]
    pub bound: i64,
    /// Evaluate zeta_H on a dual vector given by rational coordinates
    #[arg(long)]
    pub zeta: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ExtArgs {
    /// Genus, at least 2
    #[arg(long)]
    pub g: i64,
    #[arg(long)]
    pub json: bool,
}

fn json_line<T: Serialize>(value: &T) -> Result<String, CliError> {
    let s = serde_json::to_string(value)
        .map_err(|e| CliError::Domain(format!("serialisation failed: {e}")))?;
    Ok(format!("{s}\n"))
}

fn emit<T: Serialize>(json: bool, value: &T, text: String) -> Result<String, CliError> {
    if json {
        json_line(value)
    } else {
        Ok(text)
    }
}

fn build_lattice(raw: &str) -> Result<IntegralLattice, CliError> {
    let spec: LatticeSpec = parse_json("lattice", raw)?;
    spec.build()
}

pub fn dispatch(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Lat(cmd) => match cmd {
            LatCmd::Info(a) => lat_info(a),
            LatCmd::Snf(a) => lat_snf(a),
            LatCmd::Disc(a) => lat_disc(a),
            LatCmd::Comp(a) => lat_comp(a),
            LatCmd::Sat(a) => lat_sat(a),
            LatCmd::Div(a) => lat_div(a),
            LatCmd::Orbit(a) => lat_orbit(a),
        },
        Command::Moduli(a) => moduli(a),
        Command::Bm(a) => bm(a),
        Command::Extmukai(a) => extmukai_cmd(a),
        Command::Verify(cmd) => match cmd {
            VerifyCmd::Glue(a) => verify_glue(a),
            VerifyCmd::Cokernel(a) => verify_cokernel(a),
            VerifyCmd::Anti(a) => verify_anti(a),
        },
    }
}

fn lat_info(a: LatticeArg) -> Result<String, CliError> {
    let l = build_lattice(&a.lattice)?;
    let (pos, neg) = l.signature();
    let rep = LatInfoReport {
        label: l.label().map(|s| s.to_string()),
        rank: l.rank(),
        even: true,
        det: Big(l.det().clone()),
        det_abs: Big(l.det_abs()),
        unimodular: l.is_unimodular(),
        signature: [pos, neg],
        gram: gram_json(l.gram()),
    };
    let text = rep.render();
    emit(a.json, &rep, text)
}

fn lat_snf(a: SnfArgs) -> Result<String, CliError> {
    let m = match (&a.matrix, &a.lattice) {
        (Some(raw), None) => {
            let rows = parse_int_matrix("matrix", raw)?;
            let width = rows.first().map_or(0, |r| r.len());
            if rows.iter().any(|r| r.len() != width) {
                return Err(CliError::Parse("--matrix: rows have unequal lengths".into()));
            }
            IntMat::from_rows(rows)
        }
        (None, Some(raw)) => build_lattice(raw)?.gram().clone(),
        _ => {
            return Err(CliError::Parse(
                "snf needs exactly one of --matrix or --lattice".into(),
            ))
        }
    };
    let s = mat::snf(&m);
    let rep = SnfReport {
        rows: m.rows(),
        cols: m.cols(),
        d: s.d.iter().cloned().map(Big).collect(),
        left: gram_json(&s.left),
        right: gram_json(&s.right),
    };
    let text = rep.render();
    emit(a.json, &rep, text)
}

fn element_json(form: &FiniteQuadraticForm, e: &k3lat::DiscElement) -> ElementJson {
    ElementJson {
        coeffs: bigs(e.coeffs()),
        order: Big(form.order_of(e)),
        q: rat_pair(&form.q_of(e)),
    }
}

fn lat_disc(a: DiscArgs) -> Result<String, CliError> {
    let l = build_lattice(&a.lattice)?;
    let mut form = discform::discriminant_form(&l);
    if a.negate {
        form = form.negate();
    }
    let element = match &a.element {
        Some(raw) => {
            let coords = parse_rational_vector("element", raw)?;
            let e = form.element_of(&coords).map_err(CliError::from)?;
            Some(element_json(&form, &e))
        }
        None => None,
    };
    let rep = DiscReport {
        label: l.label().map(|s| s.to_string()),
        negated: a.negate,
        order: Big(form.order().clone()),
        form: FormJson::of(&form),
        element,
    };
    let text = rep.render();
    emit(a.json, &rep, text)
}

fn lat_comp(a: BasisArgs) -> Result<String, CliError> {
    let l = build_lattice(&a.lattice)?;
    let basis = parse_int_matrix("basis", &a.basis)?;
    let sub = Sublattice::new(&l, basis).map_err(CliError::from)?;
    let comp = sub.orthogonal_complement();
    let rep = CompReport {
        ambient_rank: l.rank(),
        input_rank: sub.rank(),
        input_degenerate: sub.is_degenerate(),
        complement_rank: comp.rank(),
        basis: comp.basis().iter().map(|v| bigs(v)).collect(),
        gram: gram_json(comp.gram()),
    };
    let text = rep.render();
    emit(a.json, &rep, text)
}

fn lat_sat(a: BasisArgs) -> Result<String, CliError> {
    let l = build_lattice(&a.lattice)?;
    let basis = parse_int_matrix("basis", &a.basis)?;
    let sub = Sublattice::new(&l, basis).map_err(CliError::from)?;
    let rep = SatReport {
        input_basis: sub.given_basis().iter().map(|v| bigs(v)).collect(),
        saturated_basis: sub.basis().iter().map(|v| bigs(v)).collect(),
        index: Big(sub.saturation_index().clone()),
        input_primitive: sub.given_is_primitive(),
        gram: gram_json(sub.gram()),
    };
    let text = rep.render();
    emit(a.json, &rep, text)
}

fn lat_div(a: DivArgs) -> Result<String, CliError> {
    let l = build_lattice(&a.lattice)?;
    let v = parse_int_vector("v", &a.v)?;
    let divisibility = l.divisibility(&v).map_err(CliError::from)?;
    let rep = DivReport {
        v: bigs(&v),
        divisibility: Big(divisibility),
        primitive: l.is_primitive(&v).map_err(CliError::from)?,
        pairings: bigs(&l.basis_pairings(&v).map_err(CliError::from)?),
    };
    let text = rep.render();
    emit(a.json, &rep, text)
}

fn lat_orbit(a: OrbitArgs) -> Result<String, CliError> {
    let l = build_lattice(&a.lattice)?;
    let v = parse_int_vector("v", &a.v)?;
    let u = parse_int_vector("u", &a.u)?;
    let w = parse_int_matrix("witness", &a.witness)?;
    if w.len() != 4 {
        return Err(CliError::Parse(
            "--witness: expected exactly four vectors (two hyperbolic pairs)".into(),
        ));
    }
    let witness = HyperbolicWitness {
        first: [w[0].clone(), w[1].clone()],
        second: [w[2].clone(), w[3].clone()],
    };
    let equivalent = mukai::orbit_equivalent(&l, &v, &u, &witness).map_err(CliError::from)?;
    let form = discform::discriminant_form(&l);
    let class = |x: &[BigInt]| -> Result<Vec<Big>, CliError> {
        let div = l.divisibility(x).map_err(CliError::from)?;
        let coords: Vec<_> = x
            .iter()
            .map(|c| num_rational::BigRational::new(c.clone(), div.clone()))
            .collect();
        Ok(bigs(form.element_of(&coords).map_err(CliError::from)?.coeffs()))
    };
    let rep = OrbitReport {
        v_square: Big(l.square(&v).map_err(CliError::from)?),
        u_square: Big(l.square(&u).map_err(CliError::from)?),
        div_v: Big(l.divisibility(&v).map_err(CliError::from)?),
        div_u: Big(l.divisibility(&u).map_err(CliError::from)?),
        class_v: class(&v)?,
        class_u: class(&u)?,
        v: bigs(&v),
        u: bigs(&u),
        equivalent,
    };
    let text = rep.render();
    emit(a.json, &rep, text)
}

fn moduli(a: ModuliArgs) -> Result<String, CliError> {
    let spec: K3ModelSpec = parse_json("model", &a.model)?;
    let model = spec.build()?;
    match &a.v {
        None => {
            let form = model.disc_form();
            let fj = FormJson::of(&form);
            let rep = ModelReport {
                ns_rank: model.ns().rank(),
                rank: model.extended_ns().rank(),
                det: Big(model.extended_ns().det().clone()),
                disc_group: fj.group(),
                disc_form: fj,
                gram: gram_json(model.extended_ns().gram()),
            };
            let text = rep.render();
            emit(a.json, &rep, text)
        }
        Some(raw) => {
            let vspec: MukaiVectorSpec = parse_json("v", raw)?;
            let v = vspec.build();
            let rep = mukai::moduli_report(&model, &v).map_err(CliError::from)?;
            let moduli_ns = if rep.v_square >= BigInt::zero() {
                let comp = mukai::ns_of_moduli(&model, &v).map_err(CliError::from)?;
                Some(ModuliNsJson {
                    basis: comp.basis().iter().map(|x| bigs(x)).collect(),
                    gram: gram_json(comp.gram()),
                })
            } else {
                None
            };
            let json = ModuliJson {
                v: MukaiJson { r: Big(v.r.clone()), e: bigs(&v.e), s: Big(v.s.clone()) },
                v_square: Big(rep.v_square.clone()),
                kind: KindJson::of(&rep.kind),
                nonempty: rep.nonempty,
                dimension: rep.dimension.clone().map(Big),
                div_v: Big(rep.div_v.clone()),
                fine: rep.fine,
                obstruction_order: Big(rep.obstruction_order.clone()),
                ses_kernel_order: Big(rep.ses_kernel_order.clone()),
                caldararu: element_json(&rep.disc_form, &rep.caldararu),
                transcendental: element_json(&rep.transcendental_form, &rep.transcendental),
                disc_form: FormJson::of(&rep.disc_form),
                moduli_ns,
                assumes_generic_polarisation: rep.assumes_generic_polarisation,
            };
            let text = json.render();
            emit(a.json, &json, text)
        }
    }
}

fn bm(a: BmArgs) -> Result<String, CliError> {
    let spec: BmConfigSpec = parse_json("config", &a.config)?;
    let ns_rows = spec.ns_gram.iter().map(|r| r.iter().map(|b| b.0.clone()).collect()).collect();
    let ns = IntegralLattice::new(ns_rows).map_err(CliError::from)?;
    let ample = spec.ample.as_ref().map(|v| v.iter().map(|b| b.0.clone()).collect());
    let model = K3Model::new(ns, ample).map_err(CliError::from)?;
    let h: Vec<BigInt> = spec.h.iter().map(|b| b.0.clone()).collect();
    let config = BmConfig::new(model, h, a.bound).map_err(CliError::from)?;

    let ns_form = config.ns_disc_form();
    let (section_witness, section_note) =
        match k3lat::bm::elliptic_with_section(config.model().ns(), a.bound) {
            SectionSearch::Witness(f) => (Some(bigs(&f)), None),
            SectionSearch::Inconclusive { note } => (None, Some(note)),
        };

    let zeta = match &a.zeta {
        Some(raw) => {
            let coords = parse_rational_vector("zeta", raw)?;
            let value = config.zeta_dual(&coords).map_err(CliError::from)?;
            Some(ZetaJson {
                input: coords.iter().map(fmt_rational).collect(),
                value: Big(value),
                modulus: Big(config.div_h().clone()),
            })
        }
        None => None,
    };

    let degree = match a.d {
        Some(d) => {
            let d_big = BigInt::from(d);
            let v_d = config.v_d(&d_big);
            let div_vd = config.div_vd(&d_big);
            let torsor = config.torsor_class(&d_big, a.bound);
            let dual_divisor = config.find_dual_divisor(a.bound);
            Some(DegreeJson {
                d,
                v_d: MukaiJson {
                    r: Big(v_d.r.clone()),
                    e: bigs(&v_d.e),
                    s: Big(v_d.s.clone()),
                },
                fine: div_vd.is_one(),
                obstruction_order: Big(div_vd.clone()),
                sha_kernel_order: Big(config.sha_kernel_order(&d_big)),
                div_vd: Big(div_vd),
                torsor: TorsorJson {
                    zeta_value: Big(torsor.zeta_value.clone()),
                    order: Big(torsor.order.clone()),
                    trivial: torsor.is_trivial(),
                    dual_divisor: dual_divisor.map(|v| bigs(&v)),
                    representative: torsor.representative.as_ref().map(|e| bigs(e.coeffs())),
                },
            })
        }
        None => None,
    };

    let pair = match (a.d, a.e) {
        (Some(d), Some(e)) => {
            let (d_big, e_big) = (BigInt::from(d), BigInt::from(e));
            let (birational, birational_note) = match config.bm_birational(&d_big, &e_big) {
                Ok(rep) => (
                    Some(BirationalJson {
                        birational: rep.birational,
                        div_d: Big(rep.div_d),
                        div_e: Big(rep.div_e),
                        obstruction_order_d: Big(rep.obstruction_order_d),
                        obstruction_order_e: Big(rep.obstruction_order_e),
                        class_d: bigs(rep.class_d.coeffs()),
                        class_e: bigs(rep.class_e.coeffs()),
                        classes_equal: rep.classes_equal,
                    }),
                    None,
                ),
                Err(k3lat::Error::MissingSectionWitness) => {
                    (None, Some(k3lat::Error::MissingSectionWitness.to_string()))
                }
                Err(e) => return Err(CliError::from(e)),
            };
            Some(PairJson {
                e,
                torsor_equivalent: config.torsor_equivalent(&d_big, &e_big),
                obstruction_image_exponent: Big(config.obstruction_image_exponent(&d_big, &e_big)),
                birational,
                birational_note,
            })
        }
        _ => None,
    };

    let rep = BmJson {
        h: bigs(config.h()),
        h_square: Big(config.model().ns().square(config.h()).map_err(CliError::from)?),
        genus: Big(config.genus().clone()),
        div_h: Big(config.div_h().clone()),
        section_witness,
        section_note,
        ns_disc_group: FormJson::of(&ns_form).group(),
        zeta,
        degree,
        pair,
    };
    let text = rep.render();
    emit(a.json, &rep, text)
}

fn extmukai_cmd(a: ExtArgs) -> Result<String, CliError> {
    let r = k3lat::extmukai::derived_distinct(a.g).map_err(CliError::from)?;
    let rep = ExtMukaiJson {
        g: r.g,
        disc_m: Big(r.disc_m.clone()),
        disc_mprime: Big(r.disc_mprime.clone()),
        distinct: r.distinct,
        applicable: r.applicable,
        gram_m: gram_json(&r.gram_m),
        gram_mprime: gram_json(&r.gram_mprime),
    };
    let text = rep.render();
    emit(a.json, &rep, text)
}

fn verify_glue(a: BasisArgs) -> Result<String, CliError> {
    let l = build_lattice(&a.lattice)?;
    let basis = parse_int_matrix("basis", &a.basis)?;
    let rep = glue_check(&l, basis).map_err(CliError::from)?;
    let json = GlueJson {
        ambient_rank: l.rank(),
        sub_rank: rep.sublattice.rank(),
        sub_basis: rep.sublattice.basis().iter().map(|v| bigs(v)).collect(),
        complement_rank: rep.complement.rank(),
        complement_basis: rep.complement.basis().iter().map(|v| bigs(v)).collect(),
        a_n: FormJson::of(&rep.sub_form),
        a_t: FormJson::of(&rep.comp_form),
        images: rep.images.iter().map(|e| bigs(e.coeffs())).collect(),
        orders_match: rep.orders_match,
        anti_isometric: rep.anti_isometric,
        verified: rep.verified(),
    };
    let text = json.render();
    emit(a.json, &json, text)
}

fn verify_cokernel(a: CokernelArgs) -> Result<String, CliError> {
    let l = build_lattice(&a.lattice)?;
    let basis = parse_int_matrix("basis", &a.basis)?;
    let v = parse_int_vector("v", &a.v)?;
    let sub_rank = basis.len();
    let rep = transcendental_cokernel(&l, basis, &v).map_err(CliError::from)?;
    let json = CokernelJson {
        ambient_rank: l.rank(),
        sub_rank,
        v: bigs(&v),
        divisibility: Big(rep.divisibility.clone()),
        index: Big(rep.index.clone()),
        witness: bigs(&rep.witness),
        matches: rep.matches,
    };
    let text = json.render();
    emit(a.json, &json, text)
}

fn verify_anti(a: AntiArgs) -> Result<String, CliError> {
    let la = {
        let spec: LatticeSpec = parse_json("a", &a.a)?;
        spec.build()?
    };
    let lb = {
        let spec: LatticeSpec = parse_json("b", &a.b)?;
        spec.build()?
    };
    let fa = discform::discriminant_form(&la);
    let fb = discform::discriminant_form(&lb);
    let map_rows = parse_int_matrix("map", &a.map)?;
    // rows are generator coefficients in the target form
    let images: Vec<k3lat::DiscElement> = map_rows
        .iter()
        .map(|row| fb.element_from_coeffs(row.clone()))
        .collect::<Result<_, _>>()
        .map_err(CliError::from)?;
    let result =
        discform::forms_anti_isometric_elementwise(&fa, &fb, &images).map_err(CliError::from)?;
    let json = AntiJson {
        source_group: FormJson::of(&fa).group(),
        target_group: FormJson::of(&fb).group(),
        map: map_rows.iter().map(|r| bigs(r)).collect(),
        anti_isometric: result,
    };
    let text = json.render();
    emit(a.json, &json, text)
}
