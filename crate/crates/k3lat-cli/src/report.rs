//! Output structures for every command, each with a machine (JSON) form and
//! an aligned-text form. All JSON types round-trip: parsing the emitted
//! string back into the type and re-serialising is the identity.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use k3lat::discform::FiniteQuadraticForm;
use k3lat::mukai::ModuliSpaceKind;

use crate::schema::Big;

pub fn fmt_int(x: &BigInt) -> String {
    x.to_string()
}

pub fn fmt_ints(xs: &[BigInt]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

pub fn fmt_bigs(xs: &[Big]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.0.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn fmt_rationals(xs: &[BigRational]) -> String {
    let inner: Vec<String> = xs.iter().map(fmt_rational).collect();
    format!("[{}]", inner.join(", "))
}

pub fn rat_pair(r: &BigRational) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

pub fn pair_to_string(p: &[String; 2]) -> String {
    if p[1] == "1" {
        p[0].clone()
    } else {
        format!("{}/{}", p[0], p[1])
    }
}

/// `Z/d1 x Z/d2 ...`, or `trivial`.
pub fn group_name(factors: &[Big]) -> String {
    if factors.is_empty() {
        return "trivial".into();
    }
    factors.iter().map(|d| format!("Z/{}", d.0)).collect::<Vec<_>>().join(" x ")
}

pub fn kv(out: &mut String, width: usize, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "  {key:<width$}  {value}");
}

/// Right-aligned matrix rows, four-space indent.
pub fn matrix_block(out: &mut String, name: &str, rows: &[Vec<Big>]) {
    let _ = writeln!(out, "  {name}:");
    if rows.is_empty() {
        let _ = writeln!(out, "    []");
        return;
    }
    let width = rows
        .iter()
        .flat_map(|r| r.iter())
        .map(|x| x.0.to_string().len())
        .max()
        .unwrap_or(1);
    for row in rows {
        let cells: Vec<String> =
            row.iter().map(|x| format!("{:>width$}", x.0.to_string())).collect();
        let _ = writeln!(out, "    [{}]", cells.join(" "));
    }
}

/// JSON image of a finite quadratic form, fractions as string pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormJson {
    pub invariant_factors: Vec<Big>,
    pub generators: Vec<Vec<[String; 2]>>,
    pub q: Vec<[String; 2]>,
    pub pairing: Vec<Vec<[String; 2]>>,
}

impl FormJson {
    pub fn of(form: &FiniteQuadraticForm) -> Self {
        FormJson {
            invariant_factors: form.invariant_factors().iter().cloned().map(Big).collect(),
            generators: form
                .generators()
                .iter()
                .map(|g| g.iter().map(rat_pair).collect())
                .collect(),
            q: form.q_values().iter().map(rat_pair).collect(),
            pairing: form
                .pairing_values()
                .iter()
                .map(|row| row.iter().map(rat_pair).collect())
                .collect(),
        }
    }

    pub fn group(&self) -> String {
        group_name(&self.invariant_factors)
    }

    pub fn q_line(&self) -> String {
        let inner: Vec<String> = self.q.iter().map(pair_to_string).collect();
        format!("[{}]", inner.join(", "))
    }

    pub fn generators_line(&self) -> String {
        let inner: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                let coords: Vec<String> = g.iter().map(pair_to_string).collect();
                format!("[{}]", coords.join(", "))
            })
            .collect();
        format!("[{}]", inner.join(", "))
    }

    pub fn render(&self, out: &mut String, width: usize) {
        kv(out, width, "group", self.group());
        kv(out, width, "order", {
            let mut o = BigInt::from(1);
            for f in &self.invariant_factors {
                o *= &f.0;
            }
            o
        });
        kv(out, width, "generators", self.generators_line());
        kv(out, width, "q", self.q_line());
        let pair_rows: Vec<String> = self
            .pairing
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(pair_to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        kv(out, width, "pairing", format!("[{}]", pair_rows.join(", ")));
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub coeffs: Vec<Big>,
    pub order: Big,
    pub q: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatInfoReport {
    pub label: Option<String>,
    pub rank: usize,
    pub even: bool,
    pub det: Big,
    pub det_abs: Big,
    pub unimodular: bool,
    pub signature: [usize; 2],
    pub gram: Vec<Vec<Big>>,
}

impl LatInfoReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        match &self.label {
            Some(l) => {
                let _ = writeln!(s, "lattice {l}");
            }
            None => {
                let _ = writeln!(s, "lattice");
            }
        }
        let w = 10;
        kv(&mut s, w, "rank", self.rank);
        kv(&mut s, w, "even", self.even);
        kv(&mut s, w, "det", &self.det.0);
        kv(&mut s, w, "|det|", &self.det_abs.0);
        kv(&mut s, w, "unimodular", self.unimodular);
        kv(&mut s, w, "signature", format!("({}, {})", self.signature[0], self.signature[1]));
        matrix_block(&mut s, "gram", &self.gram);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnfReport {
    pub rows: usize,
    pub cols: usize,
    pub d: Vec<Big>,
    pub left: Vec<Vec<Big>>,
    pub right: Vec<Vec<Big>>,
}

impl SnfReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "smith normal form");
        let w = 17;
        kv(&mut s, w, "size", format!("{} x {}", self.rows, self.cols));
        kv(&mut s, w, "invariant factors", fmt_bigs(&self.d));
        matrix_block(&mut s, "left", &self.left);
        matrix_block(&mut s, "right", &self.right);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscReport {
    pub label: Option<String>,
    pub negated: bool,
    pub order: Big,
    #[serde(flatten)]
    pub form: FormJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub element: Option<ElementJson>,
}

impl DiscReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let name = self.label.clone().unwrap_or_else(|| "lattice".into());
        if self.negated {
            let _ = writeln!(s, "discriminant form of {name}, negated");
        } else {
            let _ = writeln!(s, "discriminant form of {name}");
        }
        let w = 10;
        self.form.render(&mut s, w);
        if let Some(e) = &self.element {
            kv(&mut s, w, "element", fmt_bigs(&e.coeffs));
            kv(&mut s, w, "ord(elt)", &e.order.0);
            kv(&mut s, w, "q(elt)", pair_to_string(&e.q));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SatReport {
    pub input_basis: Vec<Vec<Big>>,
    pub saturated_basis: Vec<Vec<Big>>,
    pub index: Big,
    pub input_primitive: bool,
    pub gram: Vec<Vec<Big>>,
}

impl SatReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "saturation");
        let w = 15;
        let rows: Vec<String> = self.input_basis.iter().map(|v| fmt_bigs(v)).collect();
        kv(&mut s, w, "input basis", format!("[{}]", rows.join(", ")));
        let rows: Vec<String> = self.saturated_basis.iter().map(|v| fmt_bigs(v)).collect();
        kv(&mut s, w, "saturated basis", format!("[{}]", rows.join(", ")));
        kv(&mut s, w, "index", &self.index.0);
        kv(&mut s, w, "input primitive", self.input_primitive);
        matrix_block(&mut s, "restricted gram", &self.gram);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompReport {
    pub input_rank: usize,
    pub input_degenerate: bool,
    pub complement_rank: usize,
    pub basis: Vec<Vec<Big>>,
    pub gram: Vec<Vec<Big>>,
    pub ambient_rank: usize,
}

impl CompReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "orthogonal complement");
        let w = 16;
        kv(&mut s, w, "ambient rank", self.ambient_rank);
        kv(&mut s, w, "input rank", self.input_rank);
        kv(&mut s, w, "complement rank", self.complement_rank);
        if self.input_degenerate {
            kv(
                &mut s,
                w,
                "note",
                "input is degenerate; complement meets the input span",
            );
        }
        let rows: Vec<String> = self.basis.iter().map(|v| fmt_bigs(v)).collect();
        kv(&mut s, w, "basis", format!("[{}]", rows.join(", ")));
        matrix_block(&mut s, "gram", &self.gram);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivReport {
    pub v: Vec<Big>,
    pub divisibility: Big,
    pub primitive: bool,
    pub pairings: Vec<Big>,
}

impl DivReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "divisibility");
        let w = 14;
        kv(&mut s, w, "v", fmt_bigs(&self.v));
        kv(&mut s, w, "div(v)", &self.divisibility.0);
        kv(&mut s, w, "primitive", self.primitive);
        kv(&mut s, w, "basis pairings", fmt_bigs(&self.pairings));
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub v: Vec<Big>,
    pub u: Vec<Big>,
    pub v_square: Big,
    pub u_square: Big,
    pub div_v: Big,
    pub div_u: Big,
    pub class_v: Vec<Big>,
    pub class_u: Vec<Big>,
    pub equivalent: bool,
}

impl OrbitReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "orbit equivalence");
        let w = 10;
        kv(&mut s, w, "v", format!("{}  (v^2 = {}, div {})", fmt_bigs(&self.v), self.v_square.0, self.div_v.0));
        kv(&mut s, w, "u", format!("{}  (u^2 = {}, div {})", fmt_bigs(&self.u), self.u_square.0, self.div_u.0));
        kv(&mut s, w, "class v", fmt_bigs(&self.class_v));
        kv(&mut s, w, "class u", fmt_bigs(&self.class_u));
        kv(&mut s, w, "witness", "verified: two orthogonal hyperbolic planes");
        kv(&mut s, w, "equivalent", self.equivalent);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelReport {
    pub ns_rank: usize,
    pub rank: usize,
    pub det: Big,
    pub disc_group: String,
    pub disc_form: FormJson,
    pub gram: Vec<Vec<Big>>,
}

impl ModelReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "extended neron-severi lattice N(S)");
        let w = 12;
        kv(&mut s, w, "NS rank", self.ns_rank);
        kv(&mut s, w, "N(S) rank", self.rank);
        kv(&mut s, w, "det N(S)", &self.det.0);
        kv(&mut s, w, "disc group", &self.disc_group);
        kv(&mut s, w, "disc q", self.disc_form.q_line());
        matrix_block(&mut s, "gram N(S)", &self.gram);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KindJson {
    Empty,
    Point,
    Hyperkaehler { dim: Big },
    NotCovered { reason: String },
}

impl KindJson {
    pub fn of(kind: &ModuliSpaceKind) -> Self {
        match kind {
            ModuliSpaceKind::Empty => KindJson::Empty,
            ModuliSpaceKind::Point => KindJson::Point,
            ModuliSpaceKind::HyperKaehler { dim } => {
                KindJson::Hyperkaehler { dim: Big(dim.clone()) }
            }
            ModuliSpaceKind::NotCovered { reason } => {
                KindJson::NotCovered { reason: reason.clone() }
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            KindJson::Empty => "empty (v^2 < -2)".into(),
            KindJson::Point => "a single point (v^2 = -2)".into(),
            KindJson::Hyperkaehler { dim } => {
                if dim.0 == BigInt::from(2) {
                    "K3 surface (dimension 2)".into()
                } else {
                    let n = &dim.0 / BigInt::from(2);
                    format!("hyperkaehler of K3^[n]-type, n = {n} (dimension {})", dim.0)
                }
            }
            KindJson::NotCovered { reason } => format!("not covered: {reason}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MukaiJson {
    pub r: Big,
    #[serde(rename = "E")]
    pub e: Vec<Big>,
    pub s: Big,
}

impl MukaiJson {
    pub fn display(&self) -> String {
        format!("({}, {}, {})", self.r.0, fmt_bigs(&self.e), self.s.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuliNsJson {
    pub basis: Vec<Vec<Big>>,
    pub gram: Vec<Vec<Big>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuliJson {
    pub v: MukaiJson,
    pub v_square: Big,
    #[serde(flatten)]
    pub kind: KindJson,
    pub nonempty: Option<bool>,
    pub dimension: Option<Big>,
    pub div_v: Big,
    pub fine: bool,
    pub obstruction_order: Big,
    pub ses_kernel_order: Big,
    pub caldararu: ElementJson,
    pub transcendental: ElementJson,
    pub disc_form: FormJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub moduli_ns: Option<ModuliNsJson>,
    pub assumes_generic_polarisation: bool,
}

impl ModuliJson {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "moduli report  (assumes v-generic polarisation)");
        let w = 20;
        kv(&mut s, w, "v", self.v.display());
        kv(&mut s, w, "v^2", &self.v_square.0);
        kv(&mut s, w, "verdict", self.kind.describe());
        kv(
            &mut s,
            w,
            "nonempty",
            match self.nonempty {
                Some(b) => b.to_string(),
                None => "unknown".into(),
            },
        );
        if let Some(d) = &self.dimension {
            kv(&mut s, w, "dimension", &d.0);
        }
        kv(&mut s, w, "div(v)", &self.div_v.0);
        kv(&mut s, w, "fine", self.fine);
        kv(&mut s, w, "obstruction order", &self.obstruction_order.0);
        kv(
            &mut s,
            w,
            "brauer kernel",
            format!("Z/{} = <w/div(v)> in 0 -> Z/{} -> Br(M) -> Br(S) -> 0",
                self.ses_kernel_order.0, self.ses_kernel_order.0),
        );
        kv(
            &mut s,
            w,
            "caldararu class",
            format!(
                "{} in {}, order {}",
                fmt_bigs(&self.caldararu.coeffs),
                group_name(&self.disc_form.invariant_factors),
                self.caldararu.order.0
            ),
        );
        kv(
            &mut s,
            w,
            "transcendental",
            format!("{} in the (-1)-twisted form", fmt_bigs(&self.transcendental.coeffs)),
        );
        kv(&mut s, w, "disc form", format!("{}; q = {}", self.disc_form.group(), self.disc_form.q_line()));
        if let Some(ns) = &self.moduli_ns {
            let rows: Vec<String> = ns.basis.iter().map(|v| fmt_bigs(v)).collect();
            kv(&mut s, w, "moduli NS basis", format!("[{}]", rows.join(", ")));
            matrix_block(&mut s, "moduli NS gram", &ns.gram);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsorJson {
    pub zeta_value: Big,
    pub order: Big,
    pub trivial: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dual_divisor: Option<Vec<Big>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub representative: Option<Vec<Big>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeJson {
    pub d: i64,
    pub v_d: MukaiJson,
    pub div_vd: Big,
    pub sha_kernel_order: Big,
    pub fine: bool,
    pub obstruction_order: Big,
    pub torsor: TorsorJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BirationalJson {
    pub birational: bool,
    pub div_d: Big,
    pub div_e: Big,
    pub obstruction_order_d: Big,
    pub obstruction_order_e: Big,
    pub class_d: Vec<Big>,
    pub class_e: Vec<Big>,
    pub classes_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairJson {
    pub e: i64,
    pub torsor_equivalent: bool,
    pub obstruction_image_exponent: Big,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub birational: Option<BirationalJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub birational_note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaJson {
    pub input: Vec<String>,
    pub value: Big,
    pub modulus: Big,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BmJson {
    pub h: Vec<Big>,
    pub h_square: Big,
    pub genus: Big,
    pub div_h: Big,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub section_witness: Option<Vec<Big>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub section_note: Option<String>,
    pub ns_disc_group: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub zeta: Option<ZetaJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<DegreeJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pair: Option<PairJson>,
}

impl BmJson {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "beauville-mukai system");
        let w = 20;
        kv(&mut s, w, "H", fmt_bigs(&self.h));
        kv(&mut s, w, "H^2", &self.h_square.0);
        kv(&mut s, w, "genus g", &self.genus.0);
        kv(&mut s, w, "div(H)", &self.div_h.0);
        match (&self.section_witness, &self.section_note) {
            (Some(f), _) => kv(&mut s, w, "elliptic witness", fmt_bigs(f)),
            (None, Some(note)) => kv(&mut s, w, "elliptic witness", format!("inconclusive: {note}")),
            (None, None) => kv(&mut s, w, "elliptic witness", "inconclusive"),
        }
        kv(&mut s, w, "NS disc group", &self.ns_disc_group);
        if let Some(z) = &self.zeta {
            kv(
                &mut s,
                w,
                "zeta_H",
                format!("[{}] -> {} (mod {})", z.input.join(", "), z.value.0, z.modulus.0),
            );
        }
        if let Some(d) = &self.degree {
            let _ = writeln!(s, "degree d = {}", d.d);
            kv(&mut s, w, "v_d", d.v_d.display());
            kv(&mut s, w, "div(v_d)", &d.div_vd.0);
            kv(&mut s, w, "sha kernel order", &d.sha_kernel_order.0);
            kv(&mut s, w, "fine", d.fine);
            kv(&mut s, w, "obstruction order", &d.obstruction_order.0);
            kv(
                &mut s,
                w,
                "torsor class",
                format!(
                    "zeta = {} (mod {}), order {}{}",
                    d.torsor.zeta_value.0,
                    self.div_h.0,
                    d.torsor.order.0,
                    if d.torsor.trivial { " (trivial)" } else { "" }
                ),
            );
            match (&d.torsor.dual_divisor, &d.torsor.representative) {
                (Some(div), Some(rep)) => {
                    kv(&mut s, w, "dual divisor D", fmt_bigs(div));
                    kv(&mut s, w, "representative", format!("coeffs {} in A_NS", fmt_bigs(rep)));
                }
                _ => kv(&mut s, w, "dual divisor D", "not found within bound"),
            }
        }
        if let Some(p) = &self.pair {
            let _ = writeln!(s, "pair e = {}", p.e);
            kv(&mut s, w, "torsor equivalent", p.torsor_equivalent);
            kv(&mut s, w, "image of [Pic^e]", format!("alpha_d^{}", p.obstruction_image_exponent.0));
            match (&p.birational, &p.birational_note) {
                (Some(b), _) => {
                    kv(&mut s, w, "birational", b.birational);
                    kv(
                        &mut s,
                        w,
                        "certificate",
                        format!(
                            "div(v_d) = {}, div(v_e) = {}; obstruction orders {} and {}; classes {} and {} ({})",
                            b.div_d.0,
                            b.div_e.0,
                            b.obstruction_order_d.0,
                            b.obstruction_order_e.0,
                            fmt_bigs(&b.class_d),
                            fmt_bigs(&b.class_e),
                            if b.classes_equal { "equal" } else { "distinct" }
                        ),
                    );
                }
                (None, Some(note)) => kv(&mut s, w, "birational", format!("unavailable: {note}")),
                (None, None) => {}
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtMukaiJson {
    pub g: i64,
    #[serde(rename = "disc_M")]
    pub disc_m: Big,
    #[serde(rename = "disc_Mprime")]
    pub disc_mprime: Big,
    pub distinct: bool,
    pub applicable: bool,
    #[serde(rename = "gram_M")]
    pub gram_m: Vec<Vec<Big>>,
    #[serde(rename = "gram_Mprime")]
    pub gram_mprime: Vec<Vec<Big>>,
}

impl ExtMukaiJson {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "extended mukai discriminants  (g = {})", self.g);
        let w = 16;
        kv(&mut s, w, "disc Pic^{g-1}", &self.disc_m.0);
        kv(&mut s, w, "disc Pic^g", &self.disc_mprime.0);
        kv(&mut s, w, "distinct", self.distinct);
        kv(
            &mut s,
            w,
            "applicable",
            format!("{}  (needs 2g-2 >= 4)", self.applicable),
        );
        matrix_block(&mut s, "gram Pic^{g-1}", &self.gram_m);
        matrix_block(&mut s, "gram Pic^g", &self.gram_mprime);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlueJson {
    pub ambient_rank: usize,
    pub sub_rank: usize,
    pub sub_basis: Vec<Vec<Big>>,
    pub complement_rank: usize,
    pub complement_basis: Vec<Vec<Big>>,
    pub a_n: FormJson,
    pub a_t: FormJson,
    pub images: Vec<Vec<Big>>,
    pub orders_match: bool,
    pub anti_isometric: bool,
    pub verified: bool,
}

impl GlueJson {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "glue check");
        let w = 16;
        kv(&mut s, w, "ambient rank", self.ambient_rank);
        let rows: Vec<String> = self.sub_basis.iter().map(|v| fmt_bigs(v)).collect();
        kv(&mut s, w, "sublattice", format!("rank {}, basis [{}]", self.sub_rank, rows.join(", ")));
        let rows: Vec<String> = self.complement_basis.iter().map(|v| fmt_bigs(v)).collect();
        kv(&mut s, w, "complement", format!("rank {}, basis [{}]", self.complement_rank, rows.join(", ")));
        kv(&mut s, w, "A_N", format!("{}; q = {}", self.a_n.group(), self.a_n.q_line()));
        kv(&mut s, w, "A_T", format!("{}; q = {}", self.a_t.group(), self.a_t.q_line()));
        let rows: Vec<String> = self.images.iter().map(|v| fmt_bigs(v)).collect();
        kv(&mut s, w, "glue images", format!("[{}]", rows.join(", ")));
        kv(&mut s, w, "orders match", self.orders_match);
        kv(&mut s, w, "anti-isometric", self.anti_isometric);
        kv(&mut s, w, "verified", self.verified);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CokernelJson {
    pub ambient_rank: usize,
    pub sub_rank: usize,
    pub v: Vec<Big>,
    pub divisibility: Big,
    pub index: Big,
    pub witness: Vec<Big>,
    pub matches: bool,
}

impl CokernelJson {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "cokernel check");
        let w = 14;
        kv(&mut s, w, "ambient rank", self.ambient_rank);
        kv(&mut s, w, "sub rank", self.sub_rank);
        kv(&mut s, w, "v", fmt_bigs(&self.v));
        kv(&mut s, w, "div_N(v)", &self.divisibility.0);
        kv(&mut s, w, "index in L/N", &self.index.0);
        kv(&mut s, w, "witness u", format!("{}  (u.v = 1)", fmt_bigs(&self.witness)));
        kv(&mut s, w, "matches", self.matches);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AntiJson {
    pub source_group: String,
    pub target_group: String,
    pub map: Vec<Vec<Big>>,
    pub anti_isometric: bool,
}

impl AntiJson {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "anti-isometry check");
        let w = 14;
        kv(&mut s, w, "source", &self.source_group);
        kv(&mut s, w, "target", &self.target_group);
        let rows: Vec<String> = self.map.iter().map(|v| fmt_bigs(v)).collect();
        kv(&mut s, w, "map", format!("[{}]", rows.join(", ")));
        kv(&mut s, w, "anti-isometric", self.anti_isometric);
        s
    }
}
