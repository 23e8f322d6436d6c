//! Instance files: a TOML description of `(D, Q, Ω)` plus optional window
//! and budgets.
//!
//! ```toml
//! window = ["0"]            # optional, literals of Ω points
//!
//! [D]
//! kind = "cyclic"
//! n = 2
//!
//! [Q]
//! kind = "integers"
//!
//! [omega]
//! kind = "regular"
//!
//! [budgets]                 # optional
//! radius = 8
//! max_size = 10000
//! seed = 42
//! samples = 200
//! ```
//!
//! Group kinds: `cayley` (`table`), `cyclic` (`n`), `symmetric` (`n`),
//! `integers`, `free` (`rank`), `product` (`factors`), and, in the D position
//! only, `wreath` (`D`, `Q`, `omega`, optional `window`).
//! Ω kinds: `regular`, `int-mod` (`n`), `trivial` (`size`), `natural`,
//! `explicit` (`size`, `generators`: one image table per generator of Q),
//! `union` (`parts`).

use serde::Serialize;
use sha2::{Digest, Sha256};
use toml::{Table, Value};
use wreathcc_core::{Group, OmegaPoint, QSet, WreathGroup};

use crate::error::CliError;

pub const DEFAULT_RADIUS: usize = wreathcc_core::oracle::DEFAULT_RADIUS;
pub const DEFAULT_MAX_SIZE: usize = wreathcc_core::oracle::DEFAULT_MAX_SIZE;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDesc {
    Cayley(Vec<Vec<usize>>),
    Cyclic(u64),
    Symmetric(usize),
    Integers,
    Free(usize),
    Product(Vec<GroupDesc>),
    Wreath {
        d: Box<GroupDesc>,
        q: Box<GroupDesc>,
        omega: OmegaDesc,
        window: Option<Vec<String>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OmegaDesc {
    Regular,
    IntMod(u64),
    Trivial(usize),
    Natural,
    Explicit { size: usize, generators: Vec<Vec<usize>> },
    Union(Vec<OmegaDesc>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub radius: usize,
    pub max_size: usize,
    pub seed: u64,
    pub samples: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            radius: DEFAULT_RADIUS,
            max_size: DEFAULT_MAX_SIZE,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
        }
    }
}

#[derive(Debug, Clone)]
pub struct InstanceSpec {
    pub d: GroupDesc,
    pub q: GroupDesc,
    pub omega: OmegaDesc,
    pub window: Option<Vec<String>>,
    pub budgets: Budgets,
    /// The validated group built from the descriptors.
    pub group: WreathGroup,
    /// SHA-256 of the source text, lowercase hex.
    pub hash: String,
}

pub fn instance_hash(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn parse_instance(text: &str) -> Result<InstanceSpec, CliError> {
    let root: Table = toml::from_str(text).map_err(|e| CliError::Toml(e.to_string()))?;
    for key in root.keys() {
        if !["D", "Q", "omega", "window", "budgets"].contains(&key.as_str()) {
            return Err(CliError::invalid(key, "unknown key"));
        }
    }
    let d = group_desc(require(&root, "D", "")?, "D")?;
    let q = group_desc(require(&root, "Q", "")?, "Q")?;
    if contains_wreath(&q) {
        return Err(CliError::UnsupportedQKind { field: "Q".into() });
    }
    let omega = omega_desc(require(&root, "omega", "")?, "omega")?;
    let window = root.get("window").map(|v| string_list(v, "window")).transpose()?;
    let budgets = match root.get("budgets") {
        Some(v) => budgets(v)?,
        None => Budgets::default(),
    };
    let group = build_wreath(&d, &q, &omega, window.as_deref(), "")?;
    if group.base().is_trivial() {
        return Err(CliError::core("D", wreathcc_core::Error::TrivialD));
    }
    if group.omega().is_empty() {
        return Err(CliError::core("omega", wreathcc_core::Error::EmptyOmega));
    }
    Ok(InstanceSpec {
        d,
        q,
        omega,
        window,
        budgets,
        group,
        hash: instance_hash(text),
    })
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn require<'a>(t: &'a Table, key: &str, prefix: &str) -> Result<&'a Value, CliError> {
    t.get(key).ok_or_else(|| CliError::MissingField(join(prefix, key)))
}

fn as_table<'a>(v: &'a Value, field: &str) -> Result<&'a Table, CliError> {
    v.as_table().ok_or_else(|| CliError::invalid(field, "expected a table"))
}

fn uint(t: &Table, key: &str, prefix: &str) -> Result<u64, CliError> {
    let field = join(prefix, key);
    let v = require(t, key, prefix)?;
    let i = v
        .as_integer()
        .ok_or_else(|| CliError::invalid(&field, "expected an integer"))?;
    u64::try_from(i).map_err(|_| CliError::invalid(&field, "must be non-negative"))
}

fn usize_field(t: &Table, key: &str, prefix: &str) -> Result<usize, CliError> {
    let v = uint(t, key, prefix)?;
    usize::try_from(v).map_err(|_| CliError::invalid(join(prefix, key), "too large"))
}

fn matrix(v: &Value, field: &str) -> Result<Vec<Vec<usize>>, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| CliError::invalid(field, "expected an array of arrays"))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let f = format!("{field}[{i}]");
            row.as_array()
                .ok_or_else(|| CliError::invalid(&f, "expected an array"))?
                .iter()
                .map(|x| {
                    x.as_integer()
                        .and_then(|x| usize::try_from(x).ok())
                        .ok_or_else(|| CliError::invalid(&f, "expected non-negative integers"))
                })
                .collect()
        })
        .collect()
}

fn string_list(v: &Value, field: &str) -> Result<Vec<String>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::invalid(field, "expected an array of strings"))?
        .iter()
        .map(|x| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Integer(i) => Ok(i.to_string()),
            _ => Err(CliError::invalid(field, "expected strings")),
        })
        .collect()
}

fn kind_of<'a>(t: &'a Table, field: &str) -> Result<&'a str, CliError> {
    require(t, "kind", field)?
        .as_str()
        .ok_or_else(|| CliError::invalid(join(field, "kind"), "expected a string"))
}

fn sub_tables(t: &Table, key: &str, field: &str) -> Result<Vec<(String, Table)>, CliError> {
    let f = join(field, key);
    require(t, key, field)?
        .as_array()
        .ok_or_else(|| CliError::invalid(&f, "expected an array of tables"))?
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let fi = format!("{f}[{i}]");
            let table = as_table(x, &fi)?.clone();
            Ok((fi, table))
        })
        .collect()
}

pub fn group_desc(v: &Value, field: &str) -> Result<GroupDesc, CliError> {
    let t = as_table(v, field)?;
    let kind = kind_of(t, field)?;
    Ok(match kind {
        "cayley" => GroupDesc::Cayley(matrix(require(t, "table", field)?, &join(field, "table"))?),
        "cyclic" => GroupDesc::Cyclic(uint(t, "n", field)?),
        "symmetric" => GroupDesc::Symmetric(usize_field(t, "n", field)?),
        "integers" => GroupDesc::Integers,
        "free" => GroupDesc::Free(usize_field(t, "rank", field)?),
        "product" => GroupDesc::Product(
            sub_tables(t, "factors", field)?
                .into_iter()
                .map(|(f, table)| group_desc(&Value::Table(table), &f))
                .collect::<Result<_, _>>()?,
        ),
        "wreath" => {
            let q = group_desc(require(t, "Q", field)?, &join(field, "Q"))?;
            if contains_wreath(&q) {
                return Err(CliError::UnsupportedQKind {
                    field: join(field, "Q"),
                });
            }
            GroupDesc::Wreath {
                d: Box::new(group_desc(require(t, "D", field)?, &join(field, "D"))?),
                q: Box::new(q),
                omega: omega_desc(require(t, "omega", field)?, &join(field, "omega"))?,
                window: t
                    .get("window")
                    .map(|w| string_list(w, &join(field, "window")))
                    .transpose()?,
            }
        }
        other => {
            return Err(CliError::UnknownKind {
                field: join(field, "kind"),
                kind: other.to_string(),
            })
        }
    })
}

pub fn omega_desc(v: &Value, field: &str) -> Result<OmegaDesc, CliError> {
    let t = as_table(v, field)?;
    let kind = kind_of(t, field)?;
    Ok(match kind {
        "regular" => OmegaDesc::Regular,
        "int-mod" => OmegaDesc::IntMod(uint(t, "n", field)?),
        "trivial" => OmegaDesc::Trivial(usize_field(t, "size", field)?),
        "natural" => OmegaDesc::Natural,
        "explicit" => OmegaDesc::Explicit {
            size: usize_field(t, "size", field)?,
            generators: matrix(require(t, "generators", field)?, &join(field, "generators"))?,
        },
        "union" => OmegaDesc::Union(
            sub_tables(t, "parts", field)?
                .into_iter()
                .map(|(f, table)| omega_desc(&Value::Table(table), &f))
                .collect::<Result<_, _>>()?,
        ),
        other => {
            return Err(CliError::UnknownKind {
                field: join(field, "kind"),
                kind: other.to_string(),
            })
        }
    })
}

fn contains_wreath(d: &GroupDesc) -> bool {
    match d {
        GroupDesc::Wreath { .. } => true,
        GroupDesc::Product(fs) => fs.iter().any(contains_wreath),
        _ => false,
    }
}

fn budgets(v: &Value) -> Result<Budgets, CliError> {
    let t = as_table(v, "budgets")?;
    let mut b = Budgets::default();
    for key in t.keys() {
        match key.as_str() {
            "radius" => b.radius = usize_field(t, key, "budgets")?,
            "max_size" => b.max_size = usize_field(t, key, "budgets")?,
            "seed" => b.seed = uint(t, key, "budgets")?,
            "samples" => b.samples = usize_field(t, key, "budgets")?,
            _ => return Err(CliError::invalid(join("budgets", key), "unknown budget")),
        }
    }
    Ok(b)
}

pub fn build_group(d: &GroupDesc, field: &str) -> Result<Group, CliError> {
    let wrap = |r: wreathcc_core::Result<Group>| r.map_err(|e| CliError::core(field, e));
    match d {
        GroupDesc::Cayley(t) => wrap(Group::cayley(t.clone())),
        GroupDesc::Cyclic(n) => wrap(Group::cyclic(*n)),
        GroupDesc::Symmetric(n) => wrap(Group::symmetric(*n)),
        GroupDesc::Integers => Ok(Group::integers()),
        GroupDesc::Free(r) => wrap(Group::free(*r)),
        GroupDesc::Product(fs) => {
            let factors = fs
                .iter()
                .enumerate()
                .map(|(i, f)| build_group(f, &format!("{field}.factors[{i}]")))
                .collect::<Result<_, _>>()?;
            wrap(Group::product(factors))
        }
        GroupDesc::Wreath { d, q, omega, window } => {
            Ok(Group::wreath(build_wreath(d, q, omega, window.as_deref(), field)?))
        }
    }
}

pub fn build_omega(o: &OmegaDesc, q: &Group, field: &str) -> Result<QSet, CliError> {
    let wrap = |r: wreathcc_core::Result<QSet>| r.map_err(|e| CliError::core(field, e));
    match o {
        OmegaDesc::Regular => wrap(QSet::regular(q.clone())),
        OmegaDesc::IntMod(n) => wrap(QSet::int_mod(q.clone(), *n)),
        OmegaDesc::Trivial(k) => wrap(QSet::trivial(q.clone(), *k)),
        OmegaDesc::Natural => wrap(QSet::natural(q.clone())),
        OmegaDesc::Explicit { size, generators } => wrap(QSet::finite_explicit(q.clone(), *size, generators.clone())),
        OmegaDesc::Union(parts) => {
            let parts = parts
                .iter()
                .enumerate()
                .map(|(i, p)| build_omega(p, q, &format!("{field}.parts[{i}]")))
                .collect::<Result<_, _>>()?;
            wrap(QSet::union(q.clone(), parts))
        }
    }
}

fn build_wreath(
    d: &GroupDesc,
    q: &GroupDesc,
    omega: &OmegaDesc,
    window: Option<&[String]>,
    prefix: &str,
) -> Result<WreathGroup, CliError> {
    let base = build_group(d, &join(prefix, "D"))?;
    let top = build_group(q, &join(prefix, "Q"))?;
    let omega_field = join(prefix, "omega");
    let omega = build_omega(omega, &top, &omega_field)?;
    let window_field = join(prefix, "window");
    let window = window
        .map(|lits| {
            lits.iter()
                .map(|s| omega.parse_point(s).map_err(|e| CliError::literal(&window_field, s, e)))
                .collect::<Result<Vec<OmegaPoint>, _>>()
        })
        .transpose()?;
    WreathGroup::new(base, omega, window)
        .map_err(|e| CliError::core(if prefix.is_empty() { "instance" } else { prefix }, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LAMPLIGHTER: &str = r#"
[D]
kind = "cyclic"
n = 2

[Q]
kind = "integers"

[omega]
kind = "regular"
"#;

    #[test]
    fn lamplighter_parses() {
        let spec = parse_instance(LAMPLIGHTER).unwrap();
        assert_eq!(spec.d, GroupDesc::Cyclic(2));
        assert_eq!(spec.q, GroupDesc::Integers);
        assert_eq!(spec.omega, OmegaDesc::Regular);
        assert_eq!(spec.budgets, Budgets::default());
        assert_eq!(spec.hash.len(), 64);
        assert_eq!(spec.hash, instance_hash(LAMPLIGHTER));
    }

    #[test]
    fn trivial_d_is_rejected() {
        let text = LAMPLIGHTER.replace("n = 2", "n = 1");
        assert_eq!(parse_instance(&text).unwrap_err().code(), "E_TRIVIAL_D");
    }

    #[test]
    fn wreath_in_q_is_rejected() {
        let text = r#"
[D]
kind = "cyclic"
n = 2

[Q]
kind = "wreath"
D = { kind = "cyclic", n = 2 }
Q = { kind = "integers" }
omega = { kind = "regular" }

[omega]
kind = "regular"
"#;
        let err = parse_instance(text).unwrap_err();
        assert_eq!(err.code(), "E_UNSUPPORTED_Q_KIND");
        assert!(err.to_string().contains('Q'));
    }

    #[test]
    fn empty_omega_is_rejected() {
        let text = LAMPLIGHTER.replace("kind = \"regular\"", "kind = \"trivial\"\nsize = 0");
        assert_eq!(parse_instance(&text).unwrap_err().code(), "E_EMPTY_OMEGA");
    }

    #[test]
    fn diagnostics_name_the_field() {
        let text = LAMPLIGHTER.replace("kind = \"integers\"", "kind = \"rationals\"");
        let err = parse_instance(&text).unwrap_err();
        assert_eq!(err.code(), "E_UNKNOWN_KIND");
        assert!(err.to_string().contains("Q.kind"), "{err}");

        let text = format!("window = [\"x\"]\n{LAMPLIGHTER}");
        let err = parse_instance(&text).unwrap_err();
        assert_eq!(err.code(), "E_MALFORMED_LITERAL");
        assert!(err.to_string().contains("window"));

        let text = LAMPLIGHTER.replace("n = 2", "");
        let err = parse_instance(&text).unwrap_err();
        assert_eq!(err.code(), "E_MISSING_FIELD");
        assert!(err.to_string().contains("D.n"));
    }

    #[test]
    fn nested_and_union_instances() {
        let text = r#"
[D]
kind = "wreath"
D = { kind = "cyclic", n = 2 }
Q = { kind = "symmetric", n = 3 }
omega = { kind = "natural" }

[Q]
kind = "integers"

[omega]
kind = "union"
parts = [{ kind = "regular" }, { kind = "int-mod", n = 3 }]

[budgets]
radius = 4
seed = 7
"#;
        let spec = parse_instance(text).unwrap();
        assert!(matches!(spec.d, GroupDesc::Wreath { .. }));
        assert_eq!(spec.budgets.radius, 4);
        assert_eq!(spec.budgets.seed, 7);
        assert_eq!(spec.budgets.max_size, DEFAULT_MAX_SIZE);
        assert_eq!(spec.group.window().len(), 2);
    }

    #[test]
    fn explicit_action_and_window() {
        let text = r#"
window = ["0", "1"]

[D]
kind = "free"
rank = 2

[Q]
kind = "cyclic"
n = 2

[omega]
kind = "explicit"
size = 2
generators = [[1, 0]]
"#;
        let spec = parse_instance(text).unwrap();
        assert_eq!(spec.group.window(), &[OmegaPoint::Index(0), OmegaPoint::Index(1)]);
    }
}
