//! Named test population: pinned fixtures with their distinguished
//! subgroups, a default catalog of small and at-scale groups, and the
//! group-file / manifest disk formats.
//!
//! Fixture generator lists are pinned constants, so exports are
//! byte-stable. Four fixtures carry labeled subgroups used by the theorem
//! suites:
//!
//! * `A4` — with B (the normal Klein subgroup) and the order-2 subgroups
//!   C, D whose product is B;
//! * `remark2` — the simple group of order 168 on the projective line;
//! * `remark3` — (Z7 x| Z3) wr Z7 on 49 points, order 3^7 * 7^8, with
//!   P (an elementary abelian Sylow 3-subgroup) and F (the direct product
//!   of the seven base translation groups, normal of order 7^7);
//! * `remark4` — (Z19 x Z19) x| Z5 on 361 points, order 1805, with E (the
//!   translation subgroup).

use std::fmt;
use std::fs;
use std::path::Path;

use crate::construct::{
    alternating, cyclic, dihedral, direct_product, elementary_abelian, psl2,
    semidirect_product_matrix, symmetric, wreath_product_cyclic_top,
};
use crate::error::{Error, Result};
use crate::group::{Group, PermGroup};
use crate::modp::ModMatrix;
use crate::perm::Perm;
use crate::subgroup::Subgroup;
use crate::Bounds;

/// Whether a group is small enough for full-lattice arguments or only for
/// targeted certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Exhaustive,
    Targeted,
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scale::Exhaustive => write!(f, "exhaustive"),
            Scale::Targeted => write!(f, "targeted"),
        }
    }
}

impl Scale {
    fn parse(s: &str) -> Option<Scale> {
        match s {
            "exhaustive" => Some(Scale::Exhaustive),
            "targeted" => Some(Scale::Targeted),
            _ => None,
        }
    }
}

/// One named group in the test population.
#[derive(Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub group: Group,
    pub tags: Vec<String>,
    pub scale: Scale,
    /// Labeled subgroups the suites refer to by name (not persisted to
    /// disk; only code-built fixtures carry them).
    pub distinguished: Vec<(String, Subgroup)>,
}

impl CatalogEntry {
    pub fn new(name: &str, group: Group, tags: &[&str], bounds: &Bounds) -> CatalogEntry {
        let scale = if group
            .order_u64()
            .is_some_and(|n| n <= bounds.exhaustive_order_bound)
        {
            Scale::Exhaustive
        } else {
            Scale::Targeted
        };
        CatalogEntry {
            name: name.to_string(),
            group,
            tags: tags.iter().map(|t| t.to_string()).collect(),
            scale,
            distinguished: Vec::new(),
        }
    }

    pub fn distinguished(&self, label: &str) -> Option<&Subgroup> {
        self.distinguished
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, s)| s)
    }
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CatalogEntry({} degree {} order {} {})",
            self.name,
            self.group.degree(),
            self.group.order(),
            self.scale
        )
    }
}

fn named_sub(parent: &Group, label: &str, gens: Vec<Perm>) -> Result<(String, Subgroup)> {
    Ok((label.to_string(), Subgroup::new(parent, gens)?))
}

/// The alternating group on 4 points with its three labeled subgroups:
/// B the normal Klein subgroup, C and D two of its order-2 subgroups.
pub fn fixture_a4(bounds: &Bounds) -> Result<CatalogEntry> {
    let g = alternating(4)?;
    let p = |s: &str| Perm::parse_cycles(4, s);
    let mut e = CatalogEntry::new("A4", g.clone(), &["fixture", "solvable-expected"], bounds);
    e.distinguished = vec![
        named_sub(&g, "B", vec![p("(1,2)(3,4)")?, p("(1,3)(2,4)")?])?,
        named_sub(&g, "C", vec![p("(1,2)(3,4)")?])?,
        named_sub(&g, "D", vec![p("(1,4)(2,3)")?])?,
    ];
    Ok(e)
}

/// The simple group of order 168 acting on the 8 points of the projective
/// line over F7.
pub fn fixture_remark2(bounds: &Bounds) -> Result<CatalogEntry> {
    let g = psl2(7)?;
    Ok(CatalogEntry::new(
        "remark2",
        g,
        &["fixture", "simple-expected"],
        bounds,
    ))
}

/// (Z7 x| Z3) wr Z7 on 49 points: order 3^7 * 7^8. P is the elementary
/// abelian Sylow 3-subgroup generated by the seven per-block linear maps;
/// F is the normal subgroup of order 7^7 generated by the per-block
/// translations.
pub fn fixture_remark3(bounds: &Bounds) -> Result<CatalogEntry> {
    let h = semidirect_product_matrix(&ModMatrix::new(7, 1, vec![2])?)?;
    let w = wreath_product_cyclic_top(&h.group, 7)?;
    let g = w.group.clone();
    // Each base copy contributes [translation, linear action] in that
    // order, mirroring the generator list of the inner group.
    let f_gens: Vec<Perm> = w.copy_gens.iter().map(|c| c[0].clone()).collect();
    let p_gens: Vec<Perm> = w.copy_gens.iter().map(|c| c[1].clone()).collect();
    let mut e = CatalogEntry::new("remark3", g.clone(), &["fixture"], bounds);
    e.distinguished = vec![
        named_sub(&g, "P", p_gens)?,
        named_sub(&g, "F", f_gens)?,
    ];
    Ok(e)
}

/// (Z19 x Z19) x| Z5 on 361 points, order 1805: the semidirect product of
/// the translation plane by the order-5 companion matrix [[0,18],[1,4]].
/// E is the translation subgroup.
pub fn fixture_remark4(bounds: &Bounds) -> Result<CatalogEntry> {
    let parts = semidirect_product_matrix(&ModMatrix::new(19, 2, vec![0, 18, 1, 4])?)?;
    let g = parts.group.clone();
    let mut e = CatalogEntry::new(
        "remark4",
        g.clone(),
        &["fixture", "solvable-expected", "odd-order"],
        bounds,
    );
    e.distinguished = vec![named_sub(&g, "E", parts.translations.clone())?];
    Ok(e)
}

/// All four pinned fixtures in a stable order.
pub fn fixtures(bounds: &Bounds) -> Result<Vec<CatalogEntry>> {
    Ok(vec![
        fixture_a4(bounds)?,
        fixture_remark2(bounds)?,
        fixture_remark3(bounds)?,
        fixture_remark4(bounds)?,
    ])
}

/// The quaternion group of order 8 in its regular representation. Not a
/// split extension, so it cannot come out of the semidirect constructor;
/// the generator pair is pinned instead (points 1..8 are 1, -1, i, -i, j,
/// -j, k, -k and the generators are left multiplication by i and j).
pub fn quaternion8() -> Result<Group> {
    let g = PermGroup::from_cycle_strs(8, &["(1,3,2,4)(5,7,6,8)", "(1,5,2,6)(3,8,4,7)"])?;
    Ok(std::sync::Arc::new(g))
}

/// The default test population, in a fixed order. Small solvable and
/// nilpotent groups, Frobenius groups, the simple groups of order 60, 168
/// and 660, direct products with no order-60 sections, and the two
/// at-scale fixtures.
pub fn default_catalog(bounds: &Bounds) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for n in 1..=12 {
        let tags: &[&str] = if n == 1 {
            &["solvable-expected", "trivial"]
        } else {
            &["solvable-expected", "abelian"]
        };
        entries.push(CatalogEntry::new(
            &format!("C{n}"),
            cyclic(n)?,
            tags,
            bounds,
        ));
    }
    entries.push(CatalogEntry::new(
        "S3",
        symmetric(3)?,
        &["solvable-expected"],
        bounds,
    ));
    entries.push(CatalogEntry::new(
        "S4",
        symmetric(4)?,
        &["solvable-expected"],
        bounds,
    ));
    entries.push(CatalogEntry::new(
        "S5",
        symmetric(5)?,
        &["nonsolvable-expected"],
        bounds,
    ));
    entries.push(CatalogEntry::new(
        "D8",
        dihedral(4)?,
        &["solvable-expected", "2-group"],
        bounds,
    ));
    entries.push(CatalogEntry::new(
        "D12",
        dihedral(6)?,
        &["solvable-expected"],
        bounds,
    ));
    entries.push(CatalogEntry::new(
        "Q8",
        quaternion8()?,
        &["solvable-expected", "2-group", "quaternion"],
        bounds,
    ));
    entries.push(CatalogEntry::new(
        "EA(2,3)",
        elementary_abelian(2, 3)?,
        &["solvable-expected", "abelian", "2-group"],
        bounds,
    ));
    entries.push(CatalogEntry::new(
        "EA(3,2)",
        elementary_abelian(3, 2)?,
        &["solvable-expected", "abelian", "odd-order"],
        bounds,
    ));
    entries.push(CatalogEntry::new(
        "F20",
        semidirect_product_matrix(&ModMatrix::new(5, 1, vec![2])?)?.group,
        &["solvable-expected"],
        bounds,
    ));
    entries.push(CatalogEntry::new(
        "F21",
        semidirect_product_matrix(&ModMatrix::new(7, 1, vec![2])?)?.group,
        &["solvable-expected", "odd-order"],
        bounds,
    ));
    entries.push(fixture_a4(bounds)?);
    entries.push(CatalogEntry::new(
        "A5",
        alternating(5)?,
        &["simple-expected"],
        bounds,
    ));
    entries.push(CatalogEntry::new(
        "A4xC2",
        direct_product(&*alternating(4)?, &*cyclic(2)?)?.group,
        &["solvable-expected", "sl-free-standin"],
        bounds,
    ));
    entries.push(CatalogEntry::new(
        "S3xS3",
        direct_product(&*symmetric(3)?, &*symmetric(3)?)?.group,
        &["solvable-expected", "sl-free-standin"],
        bounds,
    ));
    entries.push(CatalogEntry::new(
        "L2(5)",
        psl2(5)?,
        &["simple-expected"],
        bounds,
    ));
    entries.push(CatalogEntry::new(
        "L2(7)",
        psl2(7)?,
        &["simple-expected"],
        bounds,
    ));
    entries.push(CatalogEntry::new(
        "L2(11)",
        psl2(11)?,
        &["simple-expected"],
        bounds,
    ));
    entries.push(fixture_remark4(bounds)?);
    entries.push(fixture_remark3(bounds)?);
    Ok(entries)
}

/// Stable identifier for a catalog: FNV-1a over names, degrees, orders,
/// generator cycle strings, scales, and tags.
pub fn catalog_id(entries: &[CatalogEntry]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x100000001b3);
    };
    for e in entries {
        eat(e.name.as_bytes());
        eat(e.group.degree().to_string().as_bytes());
        eat(e.group.order().to_string().as_bytes());
        for g in e.group.generators() {
            eat(g.to_string().as_bytes());
        }
        eat(e.scale.to_string().as_bytes());
        for t in &e.tags {
            eat(t.as_bytes());
        }
    }
    format!("{h:016x}")
}

/// Render a group file: `degree <n>`, `name <string>`, then one
/// `gen <cycles>` line per generator.
pub fn render_group(entry: &CatalogEntry) -> String {
    let mut out = String::new();
    out.push_str(&format!("degree {}\n", entry.group.degree()));
    out.push_str(&format!("name {}\n", entry.name));
    if entry.group.generators().is_empty() {
        // Trivial groups still need one generator line to satisfy the
        // nonempty rule; `()` parses to the identity.
        out.push_str("gen ()\n");
    }
    for g in entry.group.generators() {
        out.push_str(&format!("gen {g}\n"));
    }
    out
}

/// Write one group file in the render format.
pub fn save_group(entry: &CatalogEntry, path: &Path) -> Result<()> {
    fs::write(path, render_group(entry))?;
    Ok(())
}

/// Parse a group file. Blank lines and `#` comments are ignored; the first
/// significant line must declare the degree, the second the name, and each
/// remaining line one generator in 1-based cycle notation.
pub fn parse_group(text: &str, bounds: &Bounds) -> Result<CatalogEntry> {
    let mut degree: Option<usize> = None;
    let mut name: Option<String> = None;
    let mut gens: Vec<Perm> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = match line.split_once(' ') {
            Some((k, r)) => (k, r.trim()),
            None => (line, ""),
        };
        match (key, &degree, &name) {
            ("degree", None, _) => {
                let n: usize = rest.parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad degree `{rest}`"),
                })?;
                degree = Some(n);
            }
            ("name", Some(_), None) => name = Some(rest.to_string()),
            ("gen", Some(d), Some(_)) => {
                gens.push(Perm::parse_cycles(*d, rest).map_err(|e| Error::Parse {
                    line: lineno,
                    msg: e.to_string(),
                })?);
            }
            _ => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unexpected line `{line}` (want degree, then name, then gen lines)"),
                });
            }
        }
    }
    let degree = degree.ok_or(Error::Parse {
        line: last_line,
        msg: "missing `degree` line".into(),
    })?;
    let name = name.ok_or(Error::Parse {
        line: last_line,
        msg: "missing `name` line".into(),
    })?;
    if gens.is_empty() {
        return Err(Error::Parse {
            line: last_line,
            msg: "no generators".into(),
        });
    }
    let group = std::sync::Arc::new(PermGroup::from_generators(degree, gens)?);
    Ok(CatalogEntry::new(&name, group, &[], bounds))
}

/// Load one group file.
pub fn load_group(path: &Path, bounds: &Bounds) -> Result<CatalogEntry> {
    parse_group(&fs::read_to_string(path)?, bounds)
}

fn file_stem_for(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

/// Write a catalog directory: one `<name>.group` file per entry plus a
/// `manifest.tsv` of `name<TAB>scale<TAB>tag,tag` lines in catalog order.
pub fn save_catalog(dir: &Path, entries: &[CatalogEntry]) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut manifest = String::new();
    for e in entries {
        let stem = file_stem_for(&e.name);
        save_group(e, &dir.join(format!("{stem}.group")))?;
        manifest.push_str(&format!("{}\t{}\t{}\n", e.name, e.scale, e.tags.join(",")));
    }
    fs::write(dir.join("manifest.tsv"), manifest)?;
    Ok(())
}

/// Load a catalog directory written by [`save_catalog`], preserving
/// manifest order, scales, and tags.
pub fn load_catalog(dir: &Path, bounds: &Bounds) -> Result<Vec<CatalogEntry>> {
    let manifest = fs::read_to_string(dir.join("manifest.tsv"))?;
    let mut entries = Vec::new();
    for (i, line) in manifest.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split('\t');
        let (name, scale, tags) = match (parts.next(), parts.next(), parts.next()) {
            (Some(n), Some(s), Some(t)) => (n, s, t),
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: "manifest line needs name<TAB>scale<TAB>tags".into(),
                })
            }
        };
        let scale = Scale::parse(scale).ok_or(Error::Parse {
            line: i + 1,
            msg: format!("unknown scale `{scale}`"),
        })?;
        let mut entry = load_group(&dir.join(format!("{}.group", file_stem_for(name))), bounds)?;
        entry.name = name.to_string();
        entry.scale = scale;
        entry.tags = if tags.is_empty() {
            Vec::new()
        } else {
            tags.split(',').map(|t| t.to_string()).collect()
        };
        entries.push(entry);
    }
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{elementary_abelian_params, spectrum};
    use num_bigint::BigUint;

    #[test]
    fn catalog_orders_and_degrees_are_pinned() {
        let b = Bounds::default();
        let cat = default_catalog(&b).unwrap();
        let expect: Vec<(&str, usize, u64)> = vec![
            ("C1", 1, 1),
            ("C2", 2, 2),
            ("C3", 3, 3),
            ("C4", 4, 4),
            ("C5", 5, 5),
            ("C6", 6, 6),
            ("C7", 7, 7),
            ("C8", 8, 8),
            ("C9", 9, 9),
            ("C10", 10, 10),
            ("C11", 11, 11),
            ("C12", 12, 12),
            ("S3", 3, 6),
            ("S4", 4, 24),
            ("S5", 5, 120),
            ("D8", 4, 8),
            ("D12", 6, 12),
            ("Q8", 8, 8),
            ("EA(2,3)", 6, 8),
            ("EA(3,2)", 6, 9),
            ("F20", 5, 20),
            ("F21", 7, 21),
            ("A4", 4, 12),
            ("A5", 5, 60),
            ("A4xC2", 6, 24),
            ("S3xS3", 6, 36),
            ("L2(5)", 6, 60),
            ("L2(7)", 8, 168),
            ("L2(11)", 12, 660),
            ("remark4", 361, 1805),
            ("remark3", 49, 12_607_619_787),
        ];
        assert_eq!(cat.len(), expect.len());
        for (e, (name, deg, ord)) in cat.iter().zip(&expect) {
            assert_eq!(&e.name, name);
            assert_eq!(e.group.degree(), *deg, "{name}");
            assert_eq!(e.group.order(), &BigUint::from(*ord), "{name}");
            match e.scale {
                Scale::Exhaustive => assert!(*ord <= b.exhaustive_order_bound),
                Scale::Targeted => assert!(*ord > b.exhaustive_order_bound),
            }
        }
    }

    #[test]
    fn quaternion_group_is_not_dihedral() {
        let q8 = quaternion8().unwrap();
        assert!(!q8.is_abelian());
        let spec = spectrum(&q8, 100).unwrap();
        // A unique involution separates it from the dihedral group of
        // order 8 (which has five).
        assert_eq!(spec.get(&2), Some(&1));
        assert_eq!(spec.get(&4), Some(&6));
        let d8 = dihedral(4).unwrap();
        assert_eq!(spectrum(&d8, 100).unwrap().get(&2), Some(&5));
    }

    #[test]
    fn fixture_subgroups_have_the_advertised_structure() {
        let b = Bounds::default();

        let a4 = fixture_a4(&b).unwrap();
        let big = a4.distinguished("B").unwrap();
        let c = a4.distinguished("C").unwrap();
        let d = a4.distinguished("D").unwrap();
        assert_eq!(big.order(), &BigUint::from(4u32));
        assert!(big.is_normal());
        assert!(!c.is_normal());
        assert!(c.join(d).unwrap().same_subgroup_as(big));

        let r4 = fixture_remark4(&b).unwrap();
        let e = r4.distinguished("E").unwrap();
        assert_eq!(e.order(), &BigUint::from(361u32));
        assert!(e.is_normal());
        assert_eq!(elementary_abelian_params(e.group()), Some((19, 2)));

        let r3 = fixture_remark3(&b).unwrap();
        let p = r3.distinguished("P").unwrap();
        let f = r3.distinguished("F").unwrap();
        assert_eq!(p.order(), &BigUint::from(2187u32));
        assert_eq!(elementary_abelian_params(p.group()), Some((3, 7)));
        assert_eq!(f.order(), &BigUint::from(823_543u64));
        assert!(f.is_normal());
        assert_eq!(elementary_abelian_params(f.group()), Some((7, 7)));
        // P has full 3-part order, so it is a Sylow 3-subgroup.
        assert_eq!(
            crate::sylow::p_part(r3.group.order(), 3),
            BigUint::from(2187u32)
        );
    }

    #[test]
    fn group_files_round_trip() {
        let b = Bounds::default();
        for e in default_catalog(&b).unwrap() {
            if e.scale != Scale::Exhaustive {
                continue;
            }
            let text = render_group(&e);
            let back = parse_group(&text, &b).unwrap();
            assert_eq!(back.name, e.name);
            assert_eq!(back.group.degree(), e.group.degree());
            assert_eq!(back.group.order(), e.group.order());
            assert!(back.group.contains_all(e.group.generators()));
            assert!(e.group.contains_all(back.group.generators()));
        }
    }

    #[test]
    fn fixture_exports_are_bit_stable() {
        let b = Bounds::default();
        let one = render_group(&fixture_a4(&b).unwrap());
        let two = render_group(&fixture_a4(&b).unwrap());
        assert_eq!(one, two);
        assert_eq!(one, "degree 4\nname A4\ngen (1,2,3)\ngen (2,3,4)\n");
        for f in fixtures(&b).unwrap() {
            assert_eq!(render_group(&f), render_group(&f));
        }
    }

    #[test]
    fn parse_rejects_malformed_files() {
        let b = Bounds::default();
        let err = parse_group("name X\ndegree 3\n", &b).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse_group("degree 3\nname X\n", &b).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
        let err = parse_group("degree 3\nname X\ngen (1,2,3,4)\n", &b).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_group("degree 3\nname X\ngen (1,1)\n", &b).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        assert!(parse_group("# comment\n\ndegree 3\nname X\ngen (1,2)\n", &b).is_ok());
    }

    #[test]
    fn catalog_directory_round_trips() {
        let b = Bounds::default();
        let cat: Vec<CatalogEntry> = default_catalog(&b)
            .unwrap()
            .into_iter()
            .filter(|e| e.group.degree() <= 12)
            .collect();
        let dir = std::env::temp_dir().join(format!("grouplab-cat-{}", std::process::id()));
        save_catalog(&dir, &cat).unwrap();
        let back = load_catalog(&dir, &b).unwrap();
        assert_eq!(back.len(), cat.len());
        for (l, r) in cat.iter().zip(&back) {
            assert_eq!(l.name, r.name);
            assert_eq!(l.scale, r.scale);
            assert_eq!(l.tags, r.tags);
            assert_eq!(l.group.order(), r.group.order());
        }
        fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn catalog_id_tracks_content() {
        let b = Bounds::default();
        let one = default_catalog(&b).unwrap();
        let two = default_catalog(&b).unwrap();
        assert_eq!(catalog_id(&one), catalog_id(&two));
        assert_ne!(catalog_id(&one), catalog_id(&one[1..]));
    }
}
