//! Serializable report types shared by the CLI and the C ABI. All reports
//! carry a schema version and are deterministic: identical inputs produce
//! byte-identical JSON.

use crate::arith::Mat2;
use crate::cohomology::E2Table;
use crate::fusion::{FusionClassification, InvariantDims, StableIngredients};
use crate::group::{closed_form_order, GroupKind, MatrixGroup};
use crate::props::{PropertyReport, Witness};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

pub fn mat_rows(m: Mat2) -> [[u64; 2]; 2] {
    [[m.a, m.b], [m.c, m.d]]
}

#[derive(Serialize)]
pub struct GroupOrderEntry {
    pub label: String,
    /// Closed-form order as a decimal string (may exceed 2^53).
    pub closed_form: String,
    /// Enumerated order, absent when the group exceeds the element budget.
    pub enumerated: Option<u64>,
    pub matches: Option<bool>,
}

#[derive(Serialize)]
pub struct GroupInfoReport {
    pub schema: u32,
    pub p: u64,
    pub n: u32,
    pub kind: String,
    pub groups: Vec<GroupOrderEntry>,
    pub all_match: bool,
}

impl GroupInfoReport {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "group orders over Z/{}^{} ({} family)\n",
            self.p, self.n, self.kind
        );
        for g in &self.groups {
            let enumerated = g
                .enumerated
                .map_or("-".to_string(), |v| v.to_string());
            let status = match g.matches {
                Some(true) => "ok",
                Some(false) => "MISMATCH",
                None => "not enumerated",
            };
            out.push_str(&format!(
                "  {:<14} closed form {:<12} enumerated {:<12} {}\n",
                g.label, g.closed_form, enumerated, status
            ));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,closed_form,enumerated,matches\n");
        for g in &self.groups {
            out.push_str(&format!(
                "{},{},{},{}\n",
                g.label,
                g.closed_form,
                g.enumerated.map_or(String::new(), |v| v.to_string()),
                g.matches.map_or(String::new(), |v| v.to_string()),
            ));
        }
        out
    }
}

pub fn group_order_entry(
    ctx: crate::arith::Ctx,
    kind: GroupKind,
    budget: u64,
) -> crate::error::Result<GroupOrderEntry> {
    let closed = closed_form_order(ctx, kind).expect("named kinds have closed forms");
    let (enumerated, matches) = if closed <= budget as u128 {
        let g = MatrixGroup::build(ctx, kind, budget)?;
        let e = g.order();
        (Some(e), Some(e as u128 == closed))
    } else {
        (None, None)
    };
    Ok(GroupOrderEntry {
        label: kind.label(),
        closed_form: closed.to_string(),
        enumerated,
        matches,
    })
}

#[derive(Serialize)]
pub struct WitnessJson {
    pub kind: String,
    pub elements: Vec<[[u64; 2]; 2]>,
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub property: String,
    pub p: u64,
    pub n: u32,
    pub group: String,
    pub holds: bool,
    pub witness: Option<WitnessJson>,
    pub detail: Vec<String>,
}

impl VerifyReport {
    pub fn from_property(
        report: &PropertyReport,
        p: u64,
        n: u32,
        property: &str,
        group: &str,
    ) -> Self {
        let witness = report.witness.as_ref().map(|w| match w {
            Witness::Element(m) => WitnessJson {
                kind: "element".into(),
                elements: vec![mat_rows(*m)],
            },
            Witness::Pair(x, y) => WitnessJson {
                kind: "pair".into(),
                elements: vec![mat_rows(*x), mat_rows(*y)],
            },
        });
        VerifyReport {
            schema: SCHEMA_VERSION,
            property: property.to_string(),
            p,
            n,
            group: group.to_string(),
            holds: report.holds,
            witness,
            detail: report.detail.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} on {} (p={}, n={}): {}\n",
            self.property,
            self.group,
            self.p,
            self.n,
            if self.holds { "holds" } else { "FAILS" }
        );
        if let Some(w) = &self.witness {
            out.push_str(&format!("  witness ({}): {:?}\n", w.kind, w.elements));
        }
        for d in &self.detail {
            out.push_str(&format!("  {d}\n"));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        format!(
            "property,group,p,n,holds\n{},{},{},{},{}\n",
            self.property, self.group, self.p, self.n, self.holds
        )
    }
}

#[derive(Serialize)]
pub struct E2Report {
    pub schema: u32,
    pub p: u64,
    pub n: u32,
    pub kind: String,
    pub caps: (usize, usize),
    /// dims[i][j]
    pub dims: Vec<Vec<u64>>,
}

impl E2Report {
    pub fn from_table(t: &E2Table) -> Self {
        E2Report {
            schema: SCHEMA_VERSION,
            p: t.p,
            n: t.n,
            kind: t.kind.clone(),
            caps: t.caps,
            dims: t.dims.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct E2DiffCell {
    pub i: usize,
    pub j: usize,
    pub left: u64,
    pub right: u64,
}

#[derive(Serialize)]
pub struct E2CompareReport {
    pub schema: u32,
    pub p: u64,
    pub kind: String,
    pub n_left: u32,
    pub n_right: u32,
    pub caps: (usize, usize),
    pub equal: bool,
    pub differences: Vec<E2DiffCell>,
}

impl E2CompareReport {
    pub fn new(left: &E2Table, right: &E2Table) -> Self {
        let differences: Vec<E2DiffCell> = left
            .diff(right)
            .into_iter()
            .map(|(i, j, l, r)| E2DiffCell {
                i,
                j,
                left: l,
                right: r,
            })
            .collect();
        E2CompareReport {
            schema: SCHEMA_VERSION,
            p: left.p,
            kind: left.kind.clone(),
            n_left: left.n,
            n_right: right.n,
            caps: (
                left.caps.0.min(right.caps.0),
                left.caps.1.min(right.caps.1),
            ),
            equal: differences.is_empty(),
            differences,
        }
    }

    pub fn to_text(&self) -> String {
        if self.equal {
            format!(
                "E2 tables for n={} and n={} agree on all cells through ({}, {})\n",
                self.n_left, self.n_right, self.caps.0, self.caps.1
            )
        } else {
            let mut out = format!(
                "E2 tables for n={} and n={} DIFFER at {} cells:\n",
                self.n_left,
                self.n_right,
                self.differences.len()
            );
            for d in &self.differences {
                out.push_str(&format!(
                    "  ({}, {}): {} vs {}\n",
                    d.i, d.j, d.left, d.right
                ));
            }
            out
        }
    }
}

#[derive(Serialize)]
pub struct FusionClassJson {
    pub order: u64,
    pub class_size: u64,
    pub generators: Vec<[[u64; 2]; 2]>,
    pub contains_kernel: bool,
    pub is_centric: Option<bool>,
    pub is_radical: Option<bool>,
    pub out_order: Option<u64>,
    pub ambient_centralizer_contained: Option<bool>,
}

#[derive(Serialize)]
pub struct FusionReportJson {
    pub schema: u32,
    pub p: u64,
    pub n: u32,
    pub kind: String,
    pub sylow_order: u64,
    pub ambient_order: u64,
    pub kernel_order: u64,
    /// Conjugacy-class counts of subgroups of the Sylow group under both
    /// ambient interpretations.
    pub class_count_sylow_ambient: u64,
    pub class_count_full_ambient: u64,
    pub selected_ambient: String,
    pub containment_filter: bool,
    pub classes: Vec<FusionClassJson>,
    /// Indices into `classes` of the centric-radical classes.
    pub centric_radical: Vec<u32>,
    pub kernel_invariant_dims: InvariantDims,
    pub e2: E2Report,
    pub notes: Vec<String>,
}

impl FusionReportJson {
    pub fn new(
        ingredients: &StableIngredients,
        selected_ambient: &str,
    ) -> Self {
        let cls: &FusionClassification = &ingredients.classification;
        let classes: Vec<FusionClassJson> = cls
            .classes
            .iter()
            .map(|c| FusionClassJson {
                order: c.order,
                class_size: c.class_size,
                generators: c.rep.gen_mats().iter().map(|m| mat_rows(*m)).collect(),
                contains_kernel: c.contains_kernel,
                is_centric: c.is_centric,
                is_radical: c.is_radical,
                out_order: c.out_order,
                ambient_centralizer_contained: c.ambient_centralizer_contained,
            })
            .collect();
        let mut notes = vec![
            "the invariants of the Sylow group's own cohomology ring are not computed; \
             this report carries only the kernel-side data and the E2 page"
                .to_string(),
        ];
        if classes
            .iter()
            .any(|c| c.ambient_centralizer_contained == Some(false))
        {
            notes.push(
                "some centric classes have ambient centralizers escaping them (central \
                 prime-to-p scalars); those elements conjugate trivially, so out_order \
                 still counts the group acting on the class's cohomology"
                    .to_string(),
            );
        }
        if cls.sylow.kind() == GroupKind::SylowGl {
            notes.push(
                "kernel invariants are taken under the normalizer quotient inside the \
                 full general linear group; restricting the normalizer to the special \
                 linear subgroup would be a different convention"
                    .to_string(),
            );
        }
        FusionReportJson {
            schema: SCHEMA_VERSION,
            p: cls.sylow.ctx().p(),
            n: cls.sylow.ctx().n(),
            kind: cls.ambient.kind().label(),
            sylow_order: cls.sylow.order(),
            ambient_order: cls.ambient.order(),
            kernel_order: cls.kernel.order(),
            class_count_sylow_ambient: cls.sylow_class_count,
            class_count_full_ambient: cls.fused_class_count,
            selected_ambient: selected_ambient.to_string(),
            containment_filter: cls.containment_filter,
            classes,
            centric_radical: cls.centric_radical.clone(),
            kernel_invariant_dims: ingredients.kernel_invariants.clone(),
            e2: E2Report::from_table(&ingredients.e2),
            notes,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "fusion classification for the Sylow {}-subgroup of {} over Z/{}^{}\n",
            self.p, self.kind, self.p, self.n
        );
        out.push_str(&format!(
            "  |S| = {}, |G| = {}, |kernel| = {}\n",
            self.sylow_order, self.ambient_order, self.kernel_order
        ));
        out.push_str(&format!(
            "  subgroup classes: {} (conjugation inside S), {} (conjugation in G); selected: {}\n",
            self.class_count_sylow_ambient, self.class_count_full_ambient, self.selected_ambient
        ));
        out.push_str(&format!(
            "  containment filter: {}\n",
            if self.containment_filter { "on" } else { "off" }
        ));
        out.push_str("  order  class_size  kernel<=P  centric  radical  out_order\n");
        for c in &self.classes {
            let flag = |o: Option<bool>| match o {
                Some(true) => "yes",
                Some(false) => "no",
                None => "-",
            };
            out.push_str(&format!(
                "  {:<6} {:<11} {:<10} {:<8} {:<8} {}\n",
                c.order,
                c.class_size,
                if c.contains_kernel { "yes" } else { "no" },
                flag(c.is_centric),
                flag(c.is_radical),
                c.out_order.map_or("-".into(), |v| v.to_string()),
            ));
        }
        out.push_str(&format!(
            "  centric-radical classes: {:?} (orders {:?})\n",
            self.centric_radical,
            self.centric_radical
                .iter()
                .map(|&i| self.classes[i as usize].order)
                .collect::<Vec<_>>()
        ));
        out.push_str(&format!(
            "  kernel invariant dims ({}): {:?}\n",
            self.kernel_invariant_dims.group_label, self.kernel_invariant_dims.degrees
        ));
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("order,class_size,contains_kernel,is_centric,is_radical,out_order\n");
        let flag = |o: Option<bool>| o.map_or(String::new(), |v| v.to_string());
        for c in &self.classes {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.order,
                c.class_size,
                c.contains_kernel,
                flag(c.is_centric),
                flag(c.is_radical),
                c.out_order.map_or(String::new(), |v| v.to_string()),
            ));
        }
        out
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
