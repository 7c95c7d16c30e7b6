//! Command-line surface: reproducible reports over the group, property,
//! spectral-table and fusion computations. Identical invocations produce
//! byte-identical output; exit code 0 means every checked claim held, 1
//! means a claim failed (the report carries a witness), 2 is a usage,
//! budget or environment error.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use sylow2::cache;
use sylow2::cohomology::e2_page;
use sylow2::error::Error;
use sylow2::fusion::{stable_ingredients, FusionOptions};
use sylow2::group::{GroupKind, MatrixGroup, DEFAULT_BUDGET};
use sylow2::lattice::{all_subgroups, normalizer, quotient, DEFAULT_LATTICE_BUDGET};
use sylow2::props::{
    is_abelian, is_elementary_abelian, is_powerful, omega_extendable_witness, pth_roots_report,
    KernelFamily, PropertyReport,
};
use sylow2::report::{
    group_order_entry, to_json_string, E2CompareReport, E2Report, FusionReportJson,
    GroupInfoReport, VerifyReport, SCHEMA_VERSION,
};
use sylow2::{Ctx, Result, Subgroup};

#[derive(Parser)]
#[command(
    name = "sylow2",
    version,
    about = "Exact structure and mod-p cohomology data for Sylow p-subgroups of 2x2 matrix groups over Z/p^n"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Element budget for group enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Parent-order budget for subgroup lattices.
    #[arg(long, global = true, default_value_t = DEFAULT_LATTICE_BUDGET)]
    lattice_budget: u64,

    /// Directory for lattice cache files (env SYLOW2_CACHE_DIR as fallback).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Seed for randomized spot-checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Sl,
    Gl,
}

impl KindArg {
    fn family(self) -> KernelFamily {
        match self {
            KindArg::Sl => KernelFamily::Sl,
            KindArg::Gl => KernelFamily::Gl,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    /// Congruence kernel with determinant 1 (inside SL).
    K,
    /// Full congruence kernel (inside GL).
    L,
    /// The Sylow subgroup of the selected kind.
    S,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PropertyArg {
    ElementaryAbelian,
    Abelian,
    Powerful,
    OmegaExtendable,
    PthRoots,
    Theta,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AmbientArg {
    Sylow,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Constructed group orders against their closed forms.
    GroupInfo {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        n: u32,
        #[arg(long, value_enum, default_value_t = KindArg::Sl)]
        kind: KindArg,
    },
    /// Check a structural property; exit 0 iff it holds.
    Verify {
        #[arg(value_enum)]
        property: PropertyArg,
        #[arg(short)]
        p: u64,
        #[arg(short)]
        n: u32,
        #[arg(long, value_enum, default_value_t = KindArg::Sl)]
        kind: KindArg,
        /// Which group the property is checked on.
        #[arg(long, value_enum, default_value_t = GroupArg::K, ignore_case = true)]
        group: GroupArg,
        /// Kernel level m (the kernel of reduction mod p^m).
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// E2 table of the reduction-mod-p extension of the Sylow subgroup.
    E2 {
        #[arg(short)]
        p: u64,
        #[arg(short, required_unless_present = "compare")]
        n: Option<u32>,
        #[arg(long, value_enum, default_value_t = KindArg::Sl)]
        kind: KindArg,
        #[arg(long, default_value_t = 6)]
        cap_i: usize,
        #[arg(long, default_value_t = 6)]
        cap_j: usize,
        /// Compare the tables for two exponents; exit 0 iff they agree.
        #[arg(long, num_args = 2, value_names = ["N1", "N2"])]
        compare: Option<Vec<u32>>,
    },
    /// Centric-radical classification and stable-elements ingredients.
    Fusion {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        n: u32,
        #[arg(long, value_enum, default_value_t = KindArg::Sl)]
        kind: KindArg,
        /// Which conjugation ambient the headline class count refers to.
        #[arg(long, value_enum, default_value_t = AmbientArg::Sylow)]
        ambient: AmbientArg,
        /// Test every class directly instead of filtering to the classes
        /// that contain the reduction kernel.
        #[arg(long)]
        no_containment_filter: bool,
        /// Degree cap for the kernel invariant dimensions.
        #[arg(long, default_value_t = 6)]
        cap_degree: usize,
        #[arg(long, default_value_t = 6)]
        cap_i: usize,
        #[arg(long, default_value_t = 6)]
        cap_j: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    cli.cache_dir
        .clone()
        .or_else(|| std::env::var_os("SYLOW2_CACHE_DIR").map(PathBuf::from))
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::GroupInfo { p, n, kind } => group_info(cli, *p, *n, *kind),
        Command::Verify {
            property,
            p,
            n,
            kind,
            group,
            level,
        } => verify(cli, *property, *p, *n, *kind, *group, *level),
        Command::E2 {
            p,
            n,
            kind,
            cap_i,
            cap_j,
            compare,
        } => e2(cli, *p, *n, *kind, (*cap_i, *cap_j), compare.as_deref()),
        Command::Fusion {
            p,
            n,
            kind,
            ambient,
            no_containment_filter,
            cap_degree,
            cap_i,
            cap_j,
        } => fusion(
            cli,
            *p,
            *n,
            *kind,
            *ambient,
            !*no_containment_filter,
            *cap_degree,
            (*cap_i, *cap_j),
        ),
    }
}

fn group_info(cli: &Cli, p: u64, n: u32, kind: KindArg) -> Result<bool> {
    let ctx = Ctx::new(p, n)?;
    let family = kind.family();
    let groups = vec![
        group_order_entry(ctx, family.sylow_kind(), cli.budget)?,
        group_order_entry(ctx, family.kernel_kind(1), cli.budget)?,
        group_order_entry(ctx, family.full_kind(), cli.budget)?,
    ];
    let all_match = groups.iter().all(|g| g.matches != Some(false));
    let report = GroupInfoReport {
        schema: SCHEMA_VERSION,
        p,
        n,
        kind: match kind {
            KindArg::Sl => "sl".into(),
            KindArg::Gl => "gl".into(),
        },
        groups,
        all_match,
    };
    match cli.format {
        Format::Json => print!("{}", to_json_string(&report)),
        Format::Text => print!("{}", report.to_text()),
        Format::Csv => print!("{}", report.to_csv()),
    }
    Ok(report.all_match)
}

fn build_selected(
    ctx: Ctx,
    kind: KindArg,
    group: GroupArg,
    level: u32,
    budget: u64,
) -> Result<(Arc<MatrixGroup>, String)> {
    let g_kind = match group {
        GroupArg::K => GroupKind::KernelSl { level },
        GroupArg::L => GroupKind::KernelGl { level },
        GroupArg::S => kind.family().sylow_kind(),
    };
    let g = MatrixGroup::build(ctx, g_kind, budget)?;
    let label = g_kind.label();
    Ok((g, label))
}

fn verify(
    cli: &Cli,
    property: PropertyArg,
    p: u64,
    n: u32,
    kind: KindArg,
    group: GroupArg,
    level: u32,
) -> Result<bool> {
    let ctx = Ctx::new(p, n)?;
    let (report, label): (PropertyReport, String) = match property {
        PropertyArg::ElementaryAbelian => {
            let (g, label) = build_selected(ctx, kind, group, level, cli.budget)?;
            (is_elementary_abelian(&g), label)
        }
        PropertyArg::Abelian => {
            let (g, label) = build_selected(ctx, kind, group, level, cli.budget)?;
            (is_abelian(&g), label)
        }
        PropertyArg::Powerful => {
            let (g, label) = build_selected(ctx, kind, group, level, cli.budget)?;
            (is_powerful(&g)?, label)
        }
        PropertyArg::OmegaExtendable => {
            let family = match group {
                GroupArg::K => KernelFamily::Sl,
                GroupArg::L => KernelFamily::Gl,
                GroupArg::S => {
                    return Err(Error::InvalidParameter(
                        "omega extendability is checked on the kernel families".into(),
                    ))
                }
            };
            (
                omega_extendable_witness(ctx, family)?,
                family.kernel_kind(1).label(),
            )
        }
        PropertyArg::PthRoots => (
            pth_roots_report(ctx, KernelFamily::Sl)?,
            GroupKind::KernelSl { level: 1 }.label(),
        ),
        PropertyArg::Theta => (theta_report(ctx)?, "kernel depth shift".into()),
    };
    let name = match property {
        PropertyArg::ElementaryAbelian => "elementary-abelian",
        PropertyArg::Abelian => "abelian",
        PropertyArg::Powerful => "powerful",
        PropertyArg::OmegaExtendable => "omega-extendable",
        PropertyArg::PthRoots => "pth-roots",
        PropertyArg::Theta => "theta",
    };
    let out = VerifyReport::from_property(&report, p, n, name, &label);
    match cli.format {
        Format::Json => print!("{}", to_json_string(&out)),
        Format::Text => print!("{}", out.to_text()),
        Format::Csv => print!("{}", out.to_csv()),
    }
    Ok(report.holds)
}

/// Exhaustive check that the depth-shift map from the top kernel at n=2 to
/// the top kernel at the requested n is a bijective homomorphism, on the
/// full kernels and their det-1 restrictions.
fn theta_report(ctx: Ctx) -> Result<PropertyReport> {
    use sylow2::group::theta;
    use sylow2::props::{PropertyKind, Witness};
    if ctx.n() < 2 {
        return Err(Error::OutOfRange("the depth shift needs n >= 2".into()));
    }
    let c2 = Ctx::new(ctx.p(), 2)?;
    let mut detail = Vec::new();
    for (from_kind, to_kind, label) in [
        (
            GroupKind::KernelGl { level: 1 },
            GroupKind::KernelGl { level: ctx.n() - 1 },
            "full kernel",
        ),
        (
            GroupKind::KernelSl { level: 1 },
            GroupKind::KernelSl { level: ctx.n() - 1 },
            "det-1 kernel",
        ),
    ] {
        let source = MatrixGroup::build(c2, from_kind, DEFAULT_BUDGET)?;
        let target = MatrixGroup::build(ctx, to_kind, DEFAULT_BUDGET)?;
        let mut images = Vec::with_capacity(source.order() as usize);
        for &x in source.elements() {
            let tx = theta(x, c2, ctx)?;
            if !target.contains(&tx) {
                return Ok(PropertyReport {
                    property: PropertyKind::IsPGroup,
                    holds: false,
                    witness: Some(Witness::Element(x)),
                    detail: vec![format!("{label}: image leaves the target kernel")],
                });
            }
            images.push(tx);
        }
        images.sort_unstable();
        images.dedup();
        let bijective = images.len() as u64 == target.order();
        let mut homomorphism = true;
        'outer: for &x in source.elements() {
            for &y in source.elements() {
                let lhs = theta(c2.mat_mul(x, y), c2, ctx)?;
                let rhs = ctx.mat_mul(theta(x, c2, ctx)?, theta(y, c2, ctx)?);
                if lhs != rhs {
                    homomorphism = false;
                    break 'outer;
                }
            }
        }
        if !bijective || !homomorphism {
            return Ok(PropertyReport {
                property: PropertyKind::IsPGroup,
                holds: false,
                witness: None,
                detail: vec![format!(
                    "{label}: bijective={bijective} homomorphism={homomorphism}"
                )],
            });
        }
        detail.push(format!(
            "{label}: bijective homomorphism onto {} elements",
            target.order()
        ));
    }
    Ok(PropertyReport {
        property: PropertyKind::IsPGroup,
        holds: true,
        witness: None,
        detail,
    })
}

fn e2(
    cli: &Cli,
    p: u64,
    n: Option<u32>,
    kind: KindArg,
    caps: (usize, usize),
    compare: Option<&[u32]>,
) -> Result<bool> {
    let family = kind.family();
    if let Some(pair) = compare {
        let left = e2_page(Ctx::new(p, pair[0])?, family, caps, cli.budget)?;
        let right = e2_page(Ctx::new(p, pair[1])?, family, caps, cli.budget)?;
        let report = E2CompareReport::new(&left, &right);
        match cli.format {
            Format::Json => print!("{}", to_json_string(&report)),
            Format::Text => print!("{}", report.to_text()),
            Format::Csv => {
                print!("{}", left.to_csv());
                print!("{}", right.to_csv());
            }
        }
        return Ok(report.equal);
    }
    let n = n.expect("clap enforces -n unless --compare");
    let table = e2_page(Ctx::new(p, n)?, family, caps, cli.budget)?;
    match cli.format {
        Format::Json => print!("{}", to_json_string(&E2Report::from_table(&table))),
        Format::Csv => print!("{}", table.to_csv()),
        Format::Text => {
            print!(
                "E2 table for the Sylow {p}-subgroup ({} family, n={n}), caps ({}, {})\n{}",
                table.kind,
                caps.0,
                caps.1,
                table.to_csv().replace(',', "\t")
            );
        }
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn fusion(
    cli: &Cli,
    p: u64,
    n: u32,
    kind: KindArg,
    ambient: AmbientArg,
    containment_filter: bool,
    cap_degree: usize,
    e2_caps: (usize, usize),
) -> Result<bool> {
    let ctx = Ctx::new(p, n)?;
    let family = kind.family();
    let s = MatrixGroup::build(ctx, family.sylow_kind(), cli.budget)?;
    let g = MatrixGroup::build(ctx, family.full_kind(), cli.budget)?;

    let lattice = match cache_dir(cli) {
        Some(dir) => match cache::load_lattice(&dir, &s)? {
            Some(lat) => lat,
            None => {
                let lat = all_subgroups(&s, cli.lattice_budget)?;
                cache::save_lattice(&dir, &lat)?;
                lat
            }
        },
        None => all_subgroups(&s, cli.lattice_budget)?,
    };

    // Seeded spot-check that the normalizer quotient multiplies consistently.
    let kernel_group = MatrixGroup::build(ctx, family.kernel_kind(1), cli.budget)?;
    let kernel_in_g = Subgroup::from_elements(&g, kernel_group.elements())?;
    let norm = normalizer(&g, &kernel_in_g)?;
    let q = quotient(&norm, &kernel_in_g)?;
    if !q.verify_well_defined(100, cli.seed) {
        return Err(Error::Inconsistency(
            "quotient product depends on representatives".into(),
        ));
    }

    let opts = FusionOptions {
        containment_filter,
        lattice_budget: cli.lattice_budget,
    };
    let ingredients = stable_ingredients(&s, &g, &lattice, cap_degree, e2_caps, cli.budget, opts)?;
    let selected = match ambient {
        AmbientArg::Sylow => "sylow",
        AmbientArg::Full => "full",
    };
    let report = FusionReportJson::new(&ingredients, selected);
    match cli.format {
        Format::Json => print!("{}", to_json_string(&report)),
        Format::Text => print!("{}", report.to_text()),
        Format::Csv => print!("{}", report.to_csv()),
    }
    Ok(true)
}
