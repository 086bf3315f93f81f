//! Command-line front end: every library operation behind a subcommand,
//! machine-readable JSON on stdout, a one-line human summary on stderr.
//!
//! Exit codes: 0 = success, 1 = a mathematical verdict came back false
//! (or a statement was checked outside its hypothesis range), 2 = usage,
//! parse, or cap errors.

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use taucover::drinfeld::{AFieldStructure, DrinfeldModule2};
use taucover::error::{Caps, Error, Result};
use taucover::field::FieldTower;
use taucover::groups::{
    abelianization, build_group, det_mod_squares, hom_report, identify_sl2, GroupKind,
};
use taucover::residue::ResidueRing;
use taucover::text::{parse_apoly, parse_element, parse_ore};
use taucover::tower::{tower_report, tower_report_ideal, verify_lemma};
use taucover::APoly;

#[derive(Parser)]
#[command(
    name = "taucover",
    version,
    about = "Exact Drinfeld-module arithmetic and exhaustive congruence-group verification over F_q[T]"
)]
struct Cli {
    /// Largest group order any subcommand is allowed to enumerate.
    #[arg(long, global = true, default_value_t = 200_000)]
    cap: u64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe a finite field tower over F_q
    Field(FieldArgs),
    /// Polynomial ring A = F_q[T]
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Twisted polynomial ring L{t} with t a = a^q t
    #[command(subcommand)]
    Ore(OreCmd),
    /// Rank-2 Drinfeld modules phi_T = theta + g t + delta t^2
    #[command(subcommand)]
    Drinfeld(DrinfeldCmd),
    /// Matrix groups over residue rings A/(f)
    #[command(subcommand)]
    Group(GroupCmd),
    /// Statement-by-statement verification of the group lemmas
    #[command(subcommand)]
    Lemma(LemmaCmd),
    /// Reports over towers of congruence quotients
    #[command(subcommand)]
    Tower(TowerCmd),
}

#[derive(Args)]
struct FieldArgs {
    /// Base field size, a prime power p^m
    #[arg(long)]
    q: u64,
    /// Extend the base field by this degree
    #[arg(long)]
    field_ext: Option<usize>,
    /// List the elements of the top level (small fields only)
    #[arg(long)]
    list: bool,
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Factor a monic polynomial into irreducibles
    Factor {
        #[arg(long)]
        q: u64,
        /// Polynomial in T, e.g. "T^2+T+1"
        #[arg(long)]
        f: String,
    },
    /// The first irreducible of a given degree in encoding order
    SmallestIrreducible {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        degree: usize,
    },
    /// Roots of f in a degree-k extension of F_q
    Roots {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        f: String,
        /// Extension degree to search
        #[arg(long, default_value_t = 1)]
        ext: usize,
    },
}

#[derive(Args)]
struct OreCtx {
    #[arg(long)]
    q: u64,
    /// Coefficients live in this extension of F_q (auto-detected if omitted)
    #[arg(long)]
    field_ext: Option<usize>,
}

#[derive(Subcommand)]
enum OreCmd {
    /// Product of two twisted polynomials
    Mul {
        #[command(flatten)]
        ctx: OreCtx,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Right division: f = quotient * g + remainder
    Divmod {
        #[command(flatten)]
        ctx: OreCtx,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// The additive polynomial sum a_i X^{q^i} of a twisted polynomial
    Additive {
        #[command(flatten)]
        ctx: OreCtx,
        #[arg(long)]
        f: String,
    },
    /// Evaluate the additive action at a point
    Eval {
        #[command(flatten)]
        ctx: OreCtx,
        #[arg(long)]
        f: String,
        #[arg(long)]
        x: String,
    },
}

#[derive(Args)]
struct ModuleArgs {
    #[arg(long)]
    q: u64,
    /// The A-field lives in this extension of F_q (auto-detected if omitted)
    #[arg(long)]
    field_ext: Option<usize>,
    /// theta = gamma(T), the structure map's value at T
    #[arg(long)]
    theta: String,
    #[arg(long)]
    g: String,
    #[arg(long)]
    delta: String,
}

#[derive(Subcommand)]
enum DrinfeldCmd {
    /// phi_f for an operator polynomial f
    Action {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        f: String,
    },
    /// j-invariant g^{q+1}/delta
    J {
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// Automorphisms found in a degree-k extension
    Aut {
        #[command(flatten)]
        module: ModuleArgs,
        /// Extension degree to search (at least 2)
        #[arg(long, default_value_t = 2)]
        ext: usize,
    },
    /// Torsion kernel of phi_f with its module structure
    Torsion {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        f: String,
        /// Extension degree to search (default: matched to deg f)
        #[arg(long)]
        ext: Option<usize>,
    },
    /// Search for an isomorphism onto a second module
    Isom {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        g2: String,
        #[arg(long)]
        delta2: String,
        /// Extension degree to search
        #[arg(long, default_value_t = 1)]
        ext: usize,
    },
}

#[derive(Args)]
struct GroupCtx {
    #[arg(long)]
    q: u64,
    /// Monic modulus f of the residue ring A/(f)
    #[arg(long)]
    modulus: String,
    /// GL2, G1, G, SL2, or SL2modPM1
    #[arg(long, default_value = "G")]
    kind: String,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Enumerate the group and verify the group axioms
    Build {
        #[command(flatten)]
        ctx: GroupCtx,
    },
    /// Enumerated order plus the closed-form cross-check
    Order {
        #[command(flatten)]
        ctx: GroupCtx,
    },
    /// Entrywise reduction onto the group over a divisor modulus
    Reduce {
        #[command(flatten)]
        ctx: GroupCtx,
        /// Monic divisor of the source modulus
        #[arg(long)]
        target: String,
    },
    /// Invariant factors of the abelianization
    Abelianize {
        #[command(flatten)]
        ctx: GroupCtx,
    },
    /// Count homomorphisms to Z/n
    Homcount {
        #[command(flatten)]
        ctx: GroupCtx,
        #[arg(long)]
        n: u64,
    },
    /// Compare G against SL2 over the same ring
    Identify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        modulus: String,
    },
}

#[derive(Subcommand)]
enum LemmaCmd {
    /// Check one lemma over a prime power of A
    Verify {
        /// mohan, or 1 through 10
        #[arg(long)]
        id: String,
        #[arg(long)]
        q: u64,
        /// Monic irreducible generating the prime ideal
        #[arg(long)]
        prime: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum TowerCmd {
    /// Per-level report over A/p, A/p^2, ..., or one composite ideal
    Report {
        #[arg(long)]
        q: u64,
        /// Monic irreducible generating the prime ideal
        #[arg(long, conflicts_with = "ideal", required_unless_present = "ideal")]
        prime: Option<String>,
        #[arg(long, default_value_t = 1)]
        levels: u32,
        /// Single (possibly composite) monic modulus instead of a prime power
        #[arg(long)]
        ideal: Option<String>,
    },
}

struct Outcome {
    value: Value,
    human: String,
    failed: bool,
}

impl Outcome {
    fn ok(value: Value, human: String) -> Outcome {
        Outcome {
            value,
            human,
            failed: false,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let caps = Caps::with_group_order(cli.cap);
    match run(cli.cmd, &caps) {
        Ok(out) => {
            println!("{}", out.value);
            eprintln!("{}", out.human);
            std::process::exit(if out.failed { 1 } else { 0 });
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::Parse(format!("q = {q} is not a prime power")));
    }
    let mut p = q;
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    let mut m = 0u32;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(Error::Parse(format!("q = {q} is not a prime power")));
    }
    Ok((u32::try_from(p).map_err(|_| Error::CapExceeded("p too large".into()))?, m))
}

/// Builds the field context and parses inputs in it. Without an explicit
/// extension degree, inputs are first read over F_q itself; if that
/// fails, one retry happens over the degree-2 extension, so elements
/// like "w" work out of the box for the smallest interesting cases.
fn with_ctx<T>(
    q: u64,
    field_ext: Option<usize>,
    parse: impl Fn(&FieldTower, usize) -> Result<T>,
) -> Result<(FieldTower, usize, T)> {
    let (p, m) = prime_power(q)?;
    let base = FieldTower::new(p, m)?;
    match field_ext {
        Some(0) => Err(Error::Parse("field extension degree must be positive".into())),
        Some(1) => {
            let v = parse(&base, 0)?;
            Ok((base, 0, v))
        }
        Some(k) => {
            let tower = base.extend(k)?;
            let v = parse(&tower, 1)?;
            Ok((tower, 1, v))
        }
        None => match parse(&base, 0) {
            Ok(v) => Ok((base, 0, v)),
            Err(first) => {
                let tower = base.extend(2)?;
                match parse(&tower, 1) {
                    Ok(v) => Ok((tower, 1, v)),
                    Err(_) => Err(first),
                }
            }
        },
    }
}

fn module_from(args: &ModuleArgs) -> Result<DrinfeldModule2> {
    let (_, _, module) = with_ctx(args.q, args.field_ext, |tower, level| {
        let theta = parse_element(tower, level, &args.theta)?;
        let g = parse_element(tower, level, &args.g)?;
        let delta = parse_element(tower, level, &args.delta)?;
        let base = AFieldStructure::new(&theta)?;
        DrinfeldModule2::new(&base, &g, &delta)
    })?;
    Ok(module)
}

fn group_kind(s: &str) -> Result<GroupKind> {
    s.parse()
}

fn base_ring(q: u64, modulus: &str) -> Result<ResidueRing> {
    let (p, m) = prime_power(q)?;
    let tower = FieldTower::new(p, m)?;
    let f = parse_apoly(&tower, modulus)?;
    ResidueRing::new(&tower, &f)
}

fn run(cmd: Cmd, caps: &Caps) -> Result<Outcome> {
    match cmd {
        Cmd::Field(args) => field_info(&args),
        Cmd::Poly(cmd) => poly_cmd(cmd, caps),
        Cmd::Ore(cmd) => ore_cmd(cmd),
        Cmd::Drinfeld(cmd) => drinfeld_cmd(cmd, caps),
        Cmd::Group(cmd) => group_cmd(cmd, caps),
        Cmd::Lemma(LemmaCmd::Verify { id, q, prime, n }) => {
            let (p, m) = prime_power(q)?;
            let tower = FieldTower::new(p, m)?;
            let f = parse_apoly(&tower, &prime)?;
            let report = verify_lemma(&id, &tower, &f, n, caps)?;
            let failed = !report.hypothesis_ok || !report.verdict;
            let human = format!(
                "lemma {} over q={}, prime ({}), n={}: verdict {}{}",
                report.id,
                report.q,
                report.prime,
                report.n,
                report.verdict,
                if report.hypothesis_ok {
                    String::new()
                } else {
                    " (outside the stated hypothesis)".to_string()
                }
            );
            Ok(Outcome {
                value: serde_json::to_value(&report).expect("report serializes"),
                human,
                failed,
            })
        }
        Cmd::Tower(TowerCmd::Report {
            q,
            prime,
            levels,
            ideal,
        }) => {
            let (p, m) = prime_power(q)?;
            let tower = FieldTower::new(p, m)?;
            let report = match (prime, ideal) {
                (Some(prime), None) => {
                    let f = parse_apoly(&tower, &prime)?;
                    tower_report(&tower, &f, levels, caps)?
                }
                (None, Some(ideal)) => {
                    let f = parse_apoly(&tower, &ideal)?;
                    tower_report_ideal(&tower, &f, caps)?
                }
                _ => {
                    return Err(Error::Parse(
                        "pass exactly one of --prime or --ideal".into(),
                    ))
                }
            };
            let last = report.levels.last().expect("at least one level");
            let human = format!(
                "tower over q={} ideal {}: {} level(s), final group {} of order {}",
                report.q,
                report.ideal,
                report.levels.len(),
                last.final_group_name,
                last.order
            );
            Ok(Outcome::ok(
                serde_json::to_value(&report).expect("report serializes"),
                human,
            ))
        }
    }
}

fn field_info(args: &FieldArgs) -> Result<Outcome> {
    let (tower, level, ()) = with_ctx(args.q, args.field_ext.or(Some(1)), |_, _| Ok(()))?;
    let levels: Vec<Value> = (0..=tower.top_level())
        .map(|l| {
            json!({
                "level": l,
                "size": tower.size(l),
                "degree_over_base": tower.degree_over_q(l),
            })
        })
        .collect();
    let mut out = json!({
        "q": tower.q(),
        "p": tower.p(),
        "m": tower.m(),
        "levels": levels,
        "extension_moduli": tower.extension_moduli(),
    });
    if args.list {
        let size = tower.size(level);
        if size > 1024 {
            return Err(Error::CapExceeded(format!(
                "listing {size} elements is unreasonable"
            )));
        }
        let els: Vec<String> = tower
            .elements(level)
            .iter()
            .map(|e| e.to_string())
            .collect();
        out["elements"] = json!(els);
    }
    let human = format!(
        "F_{} tower with {} level(s), top size {}",
        tower.q(),
        tower.levels(),
        tower.size(tower.top_level())
    );
    Ok(Outcome::ok(out, human))
}

fn poly_cmd(cmd: PolyCmd, caps: &Caps) -> Result<Outcome> {
    match cmd {
        PolyCmd::Factor { q, f } => {
            let (p, m) = prime_power(q)?;
            let tower = FieldTower::new(p, m)?;
            let poly = parse_apoly(&tower, &f)?;
            let factors = poly.factor(caps)?;
            let list: Vec<Value> = factors
                .iter()
                .map(|(g, e)| json!([g.to_string(), e]))
                .collect();
            let human = format!("({}) = product of {} prime power(s)", poly, list.len());
            Ok(Outcome::ok(
                json!({"input": poly.to_string(), "factors": list}),
                human,
            ))
        }
        PolyCmd::SmallestIrreducible { q, degree } => {
            let (p, m) = prime_power(q)?;
            let tower = FieldTower::new(p, m)?;
            let poly = APoly::smallest_irreducible(&tower, degree)?;
            let human = format!("first irreducible of degree {degree} over F_{q}");
            Ok(Outcome::ok(
                json!({"degree": degree, "poly": poly.to_string()}),
                human,
            ))
        }
        PolyCmd::Roots { q, f, ext } => {
            if ext == 0 {
                return Err(Error::Parse("extension degree must be positive".into()));
            }
            let (p, m) = prime_power(q)?;
            let base = FieldTower::new(p, m)?;
            let poly = parse_apoly(&base, &f)?;
            let (tower, level) = if ext == 1 {
                (base, 0)
            } else {
                (base.extend(ext)?, 1)
            };
            if tower.size(level) > caps.max_field_size {
                return Err(Error::CapExceeded(format!(
                    "root search over {} elements exceeds the field cap",
                    tower.size(level)
                )));
            }
            let mut roots = Vec::new();
            for x in tower.elements(level) {
                if poly.eval(&x)?.is_zero() {
                    roots.push(x.to_string());
                }
            }
            let human = format!(
                "{} root(s) of ({}) in the degree-{} extension",
                roots.len(),
                poly,
                ext
            );
            Ok(Outcome::ok(
                json!({"poly": poly.to_string(), "extension_degree": ext, "roots": roots}),
                human,
            ))
        }
    }
}

fn ore_cmd(cmd: OreCmd) -> Result<Outcome> {
    match cmd {
        OreCmd::Mul { ctx, a, b } => {
            let (_, _, (fa, fb)) = with_ctx(ctx.q, ctx.field_ext, |tower, level| {
                Ok((parse_ore(tower, level, &a)?, parse_ore(tower, level, &b)?))
            })?;
            let prod = fa.checked_mul(&fb)?;
            let human = format!("({fa}) * ({fb}) = {prod}");
            Ok(Outcome::ok(json!({"product": prod.to_string()}), human))
        }
        OreCmd::Divmod { ctx, f, g } => {
            let (_, _, (num, den)) = with_ctx(ctx.q, ctx.field_ext, |tower, level| {
                Ok((parse_ore(tower, level, &f)?, parse_ore(tower, level, &g)?))
            })?;
            let (quot, rem) = num.right_divmod(&den)?;
            let human = format!("({num}) = ({quot}) * ({den}) + ({rem})");
            Ok(Outcome::ok(
                json!({"quotient": quot.to_string(), "remainder": rem.to_string()}),
                human,
            ))
        }
        OreCmd::Additive { ctx, f } => {
            let (_, _, op) =
                with_ctx(ctx.q, ctx.field_ext, |tower, level| parse_ore(tower, level, &f))?;
            let additive = op.to_additive()?;
            let human = format!("additive form of ({op})");
            Ok(Outcome::ok(json!({"additive": additive.to_string()}), human))
        }
        OreCmd::Eval { ctx, f, x } => {
            let (_, _, (op, point)) = with_ctx(ctx.q, ctx.field_ext, |tower, level| {
                Ok((
                    parse_ore(tower, level, &f)?,
                    parse_element(tower, level, &x)?,
                ))
            })?;
            let value = op.eval(&point)?;
            let human = format!("({op}) applied to {point} = {value}");
            Ok(Outcome::ok(json!({"value": value.to_string()}), human))
        }
    }
}

fn drinfeld_cmd(cmd: DrinfeldCmd, caps: &Caps) -> Result<Outcome> {
    match cmd {
        DrinfeldCmd::Action { module, f } => {
            let phi = module_from(&module)?;
            let op = parse_apoly(phi.tower(), &f)?;
            let image = phi.phi_of(&op)?;
            let human = format!("phi_({op}) = {image}");
            Ok(Outcome::ok(
                json!({
                    "f": op.to_string(),
                    "ore": image.to_string(),
                    "constant_term": image.constant_term().to_string(),
                    "tau_degree": image.degree(),
                }),
                human,
            ))
        }
        DrinfeldCmd::J { module } => {
            let phi = module_from(&module)?;
            let j = phi.j_invariant();
            let human = format!("j = {j}");
            Ok(Outcome::ok(json!({"j": j.to_string()}), human))
        }
        DrinfeldCmd::Aut { module, ext } => {
            let phi = module_from(&module)?;
            let auts = phi.aut_group(ext, caps)?;
            let els: Vec<String> = auts.iter().map(|u| u.to_string()).collect();
            let human = format!(
                "{} automorphism(s) in the degree-{ext} extension (j = {})",
                els.len(),
                phi.j_invariant()
            );
            Ok(Outcome::ok(
                json!({"count": els.len(), "extension_degree": ext, "elements": els}),
                human,
            ))
        }
        DrinfeldCmd::Torsion { module, f, ext } => {
            let phi = module_from(&module)?;
            let op = parse_apoly(phi.tower(), &f)?;
            let torsion = phi.torsion_kernel(&op, ext, caps)?;
            let structure: Vec<String> =
                torsion.structure.iter().map(|d| d.to_string()).collect();
            let mut out = json!({
                "ideal": format!("({})", torsion.ideal),
                "count": torsion.points.len(),
                "structure": structure,
                "level": torsion.level,
            });
            if torsion.points.len() <= 512 {
                let points: Vec<String> =
                    torsion.points.iter().map(|x| x.to_string()).collect();
                out["points"] = json!(points);
            }
            let human = format!(
                "kernel of phi_({}) has {} point(s), module shape [{}]",
                torsion.ideal,
                torsion.points.len(),
                structure.join(", ")
            );
            Ok(Outcome::ok(out, human))
        }
        DrinfeldCmd::Isom {
            module,
            g2,
            delta2,
            ext,
        } => {
            let phi = module_from(&module)?;
            let g2 = parse_element(phi.tower(), phi.level(), &g2)?;
            let d2 = parse_element(phi.tower(), phi.level(), &delta2)?;
            let other = DrinfeldModule2::new(phi.base(), &g2, &d2)?;
            let witness = phi.are_isomorphic(&other, ext, caps)?;
            let human = match &witness {
                Some(u) => format!("isomorphic via u = {u}"),
                None => format!("no isomorphism in the degree-{ext} extension"),
            };
            Ok(Outcome::ok(
                json!({
                    "isomorphic": witness.is_some(),
                    "witness": witness.map(|u| u.to_string()),
                    "extension_degree": ext,
                }),
                human,
            ))
        }
    }
}

fn group_cmd(cmd: GroupCmd, caps: &Caps) -> Result<Outcome> {
    match cmd {
        GroupCmd::Build { ctx } | GroupCmd::Order { ctx } => {
            let ring = base_ring(ctx.q, &ctx.modulus)?;
            let kind = group_kind(&ctx.kind)?;
            let table = build_group(&ring, kind, caps)?;
            let human = format!(
                "{}(A/({})) has order {} (matches the closed form)",
                kind,
                ring.modulus(),
                table.order()
            );
            Ok(Outcome::ok(
                json!({
                    "kind": kind.to_string(),
                    "modulus": ring.modulus().to_string(),
                    "order": table.order(),
                    "predicted_order": table.predicted_order(),
                }),
                human,
            ))
        }
        GroupCmd::Reduce { ctx, target } => {
            let src_ring = base_ring(ctx.q, &ctx.modulus)?;
            let dst_ring = base_ring(ctx.q, &target)?;
            let kind = group_kind(&ctx.kind)?;
            let src = build_group(&src_ring, kind, caps)?;
            let dst = build_group(&dst_ring, kind, caps)?;
            let red = taucover::reduction_map(&src, &dst)?;
            let human = format!(
                "{}(A/({})) -> {}(A/({})): surjective = {}, kernel order {}",
                kind,
                src_ring.modulus(),
                kind,
                dst_ring.modulus(),
                red.surjective,
                red.kernel.len()
            );
            Ok(Outcome::ok(
                json!({
                    "kind": kind.to_string(),
                    "from": src_ring.modulus().to_string(),
                    "to": dst_ring.modulus().to_string(),
                    "surjective": red.surjective,
                    "kernel_order": red.kernel.len(),
                    "fiber_size": red.fiber_size,
                }),
                human,
            ))
        }
        GroupCmd::Abelianize { ctx } => {
            let ring = base_ring(ctx.q, &ctx.modulus)?;
            let kind = group_kind(&ctx.kind)?;
            let table = build_group(&ring, kind, caps)?;
            let ab = abelianization(&table)?;
            let human = if ab.invariant_factors.is_empty() {
                format!("{}(A/({})) is perfect", kind, ring.modulus())
            } else {
                format!(
                    "{}(A/({}))^ab = Z/{}",
                    kind,
                    ring.modulus(),
                    ab.invariant_factors
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(" x Z/")
                )
            };
            Ok(Outcome::ok(
                json!({
                    "kind": kind.to_string(),
                    "modulus": ring.modulus().to_string(),
                    "invariant_factors": ab.invariant_factors,
                    "commutator_order": ab.commutator_order,
                }),
                human,
            ))
        }
        GroupCmd::Homcount { ctx, n } => {
            let ring = base_ring(ctx.q, &ctx.modulus)?;
            let kind = group_kind(&ctx.kind)?;
            let table = build_group(&ring, kind, caps)?;
            let ab = abelianization(&table)?;
            let dms = if kind == GroupKind::G && ring.tower().p() != 2 {
                Some(det_mod_squares(&table)?)
            } else {
                None
            };
            let rep = hom_report(&table, &ab, n, dms.as_deref())?;
            let human = format!(
                "{} hom(s) from {}(A/({})) to Z/{n}",
                rep.count,
                kind,
                ring.modulus()
            );
            Ok(Outcome::ok(
                json!({
                    "kind": kind.to_string(),
                    "modulus": ring.modulus().to_string(),
                    "n": rep.n,
                    "count": rep.count,
                    "kernel_orders": rep.kernel_orders,
                    "all_factor_through_z2": rep.all_factor_through_z2,
                }),
                human,
            ))
        }
        GroupCmd::Identify { q, modulus } => {
            let ring = base_ring(q, &modulus)?;
            let g = build_group(&ring, GroupKind::G, caps)?;
            let sl2 = build_group(&ring, GroupKind::Sl2, caps)?;
            let verdict = identify_sl2(&g, &sl2)?;
            let human = format!(
                "G(A/({})) vs SL2: verdict {} (orders {} and {})",
                ring.modulus(),
                verdict.verdict,
                verdict.orders[0],
                verdict.orders[1]
            );
            let failed = !verdict.verdict || !verdict.hypothesis_ok;
            Ok(Outcome {
                value: json!({
                    "verdict": verdict.verdict,
                    "orders": verdict.orders.to_vec(),
                    "hypothesis_ok": verdict.hypothesis_ok,
                    "note": verdict.note,
                }),
                human,
                failed,
            })
        }
    }
}
