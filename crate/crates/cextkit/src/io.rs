//! JSON file formats: groups as Cayley tables or permutation generators,
//! cubic extension diagrams with bitmask-keyed objects, and truncated
//! simplicial groups. Serialization uses canonical key ordering so that
//! byte-identical inputs give byte-identical outputs.

use crate::caps::Caps;
use crate::cubic::CubicExtensionDiagram;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::simplicial::TruncatedSimplicialGroup;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupFile {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<u16>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<u16>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile {
            name: g.name().to_string(),
            table: Some(g.table_rows()),
            degree: None,
            permutations: None,
            labels: None,
        }
    }

    pub fn to_group(&self, caps: &Caps) -> Result<Arc<FiniteGroup>> {
        match (&self.table, &self.permutations) {
            (Some(rows), _) => {
                if rows.len() > caps.max_group_order {
                    return Err(Error::OrderCapExceeded { required: rows.len(), cap: caps.max_group_order });
                }
                FiniteGroup::from_table(&self.name, rows)
            }
            (None, Some(perms)) => {
                let degree = self.degree.ok_or_else(|| Error::Parse("permutation groups need a degree".into()))?;
                FiniteGroup::from_permutations(&self.name, degree, perms, caps.max_group_order)
            }
            (None, None) => Err(Error::Parse(format!("group {} has neither table nor permutations", self.name))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapFile {
    pub from: String,
    pub direction: usize,
    pub images: Vec<u16>,
}

/// A cubic extension diagram: group definitions, bitmask-keyed object
/// references ("0b101" lists directions 2 and 0), and the generating maps.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct DiagramFile {
    pub degree: usize,
    pub groups: Vec<GroupFile>,
    pub objects: BTreeMap<String, String>,
    pub maps: Vec<MapFile>,
}

pub fn format_mask(mask: u32, degree: usize) -> String {
    format!("0b{:0width$b}", mask, width = degree.max(1))
}

pub fn parse_mask(s: &str) -> Result<u32> {
    let digits = s.strip_prefix("0b").ok_or_else(|| Error::Parse(format!("mask {s} must start with 0b")))?;
    u32::from_str_radix(digits, 2).map_err(|e| Error::Parse(format!("mask {s}: {e}")))
}

impl DiagramFile {
    pub fn from_cubic(cube: &CubicExtensionDiagram) -> Self {
        let degree = cube.degree();
        let mut groups: Vec<GroupFile> = Vec::new();
        let mut names: BTreeMap<String, Vec<Vec<u16>>> = BTreeMap::new();
        let mut objects = BTreeMap::new();
        for mask in 0..(1u32 << degree) {
            let g = cube.object(mask);
            let mut name = g.name().to_string();
            // disambiguate clashing names with different tables
            loop {
                match names.get(&name) {
                    Some(rows) if *rows != g.table_rows() => name.push('\''),
                    _ => break,
                }
            }
            if !names.contains_key(&name) {
                names.insert(name.clone(), g.table_rows());
                groups.push(GroupFile {
                    name: name.clone(),
                    table: Some(g.table_rows()),
                    degree: None,
                    permutations: None,
                    labels: None,
                });
            }
            objects.insert(format_mask(mask, degree), name);
        }
        let mut maps = Vec::new();
        for mask in 0..(1u32 << degree) {
            for i in 0..degree {
                if mask >> i & 1 == 1 {
                    maps.push(MapFile {
                        from: format_mask(mask, degree),
                        direction: i,
                        images: cube.map(mask, i).images.clone(),
                    });
                }
            }
        }
        DiagramFile { degree, groups, objects, maps }
    }

    pub fn to_cubic(&self, caps: &Caps) -> Result<CubicExtensionDiagram> {
        let mut table: BTreeMap<String, Arc<FiniteGroup>> = BTreeMap::new();
        for gf in &self.groups {
            table.insert(gf.name.clone(), gf.to_group(caps)?);
        }
        let lookup = |name: &str| -> Result<Arc<FiniteGroup>> {
            if let Some(g) = table.get(name) {
                return Ok(g.clone());
            }
            crate::corpus::zoo_by_name(name).ok_or_else(|| Error::Parse(format!("unknown group {name}")))
        };
        let size = 1usize << self.degree;
        let mut objects = Vec::with_capacity(size);
        for mask in 0..size as u32 {
            let key = format_mask(mask, self.degree);
            let name = self.objects.get(&key).ok_or_else(|| Error::Parse(format!("missing object {key}")))?;
            objects.push(lookup(name)?);
        }
        let mut maps: Vec<Vec<Option<GroupHom>>> = vec![vec![None; self.degree]; size];
        for mf in &self.maps {
            let from = parse_mask(&mf.from)?;
            if from as usize >= size || mf.direction >= self.degree || from >> mf.direction & 1 == 0 {
                return Err(Error::Parse(format!("map at {} direction {} is out of shape", mf.from, mf.direction)));
            }
            let tgt = from & !(1 << mf.direction);
            let hom = GroupHom::new(objects[from as usize].clone(), objects[tgt as usize].clone(), mf.images.clone())?;
            maps[from as usize][mf.direction] = Some(hom);
        }
        CubicExtensionDiagram::new(self.degree, objects, maps)
    }
}

/// A truncated simplicial group: levels from -1 upward, face and degeneracy
/// image tables per level.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SimplicialFile {
    pub truncation: usize,
    pub groups: Vec<GroupFile>,
    pub levels: Vec<String>,
    pub faces: Vec<Vec<Vec<u16>>>,
    pub degeneracies: Vec<Vec<Vec<u16>>>,
}

impl SimplicialFile {
    pub fn from_truncation(t: &TruncatedSimplicialGroup) -> Self {
        let mut groups: Vec<GroupFile> = Vec::new();
        let mut names: BTreeMap<String, Vec<Vec<u16>>> = BTreeMap::new();
        let mut levels = Vec::new();
        for k in -1..=(t.truncation() as isize) {
            let g = t.level(k);
            let mut name = g.name().to_string();
            loop {
                match names.get(&name) {
                    Some(rows) if *rows != g.table_rows() => name.push('\''),
                    _ => break,
                }
            }
            if !names.contains_key(&name) {
                names.insert(name.clone(), g.table_rows());
                groups.push(GroupFile {
                    name: name.clone(),
                    table: Some(g.table_rows()),
                    degree: None,
                    permutations: None,
                    labels: None,
                });
            }
            levels.push(name);
        }
        let faces = (0..=t.truncation())
            .map(|k| (0..=k).map(|i| t.face(k, i).images.clone()).collect())
            .collect();
        let degeneracies = (0..t.truncation())
            .map(|k| (0..=k).map(|i| t.degeneracy(k, i).images.clone()).collect())
            .collect();
        SimplicialFile { truncation: t.truncation(), groups, levels, faces, degeneracies }
    }

    pub fn to_truncation(&self, caps: &Caps) -> Result<TruncatedSimplicialGroup> {
        let mut table: BTreeMap<String, Arc<FiniteGroup>> = BTreeMap::new();
        for gf in &self.groups {
            table.insert(gf.name.clone(), gf.to_group(caps)?);
        }
        let lookup = |name: &str| -> Result<Arc<FiniteGroup>> {
            if let Some(g) = table.get(name) {
                return Ok(g.clone());
            }
            crate::corpus::zoo_by_name(name).ok_or_else(|| Error::Parse(format!("unknown group {name}")))
        };
        if self.levels.len() != self.truncation + 2 {
            return Err(Error::Parse("level count must be truncation + 2".into()));
        }
        let levels = self.levels.iter().map(|n| lookup(n)).collect::<Result<Vec<_>>>()?;
        let mut faces = Vec::new();
        for (k, fams) in self.faces.iter().enumerate() {
            let mut row = Vec::new();
            for images in fams {
                row.push(GroupHom::new(levels[k + 1].clone(), levels[k].clone(), images.clone())?);
            }
            faces.push(row);
        }
        let mut degeneracies = Vec::new();
        for (k, fams) in self.degeneracies.iter().enumerate() {
            let mut row = Vec::new();
            for images in fams {
                row.push(GroupHom::new(levels[k + 1].clone(), levels[k + 2].clone(), images.clone())?);
            }
            degeneracies.push(row);
        }
        TruncatedSimplicialGroup::new(levels, faces, degeneracies)
    }
}

pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group;

    #[test]
    fn diagram_round_trip() {
        let d4 = FiniteGroup::dihedral(4);
        let r = group::generated_subgroup(&d4, &[1]).unwrap();
        let (_, pi) = group::quotient(&d4, &r).unwrap();
        let cube = CubicExtensionDiagram::from_hom(pi).unwrap();
        let file = DiagramFile::from_cubic(&cube);
        let text = to_canonical_json(&file).unwrap();
        let parsed: DiagramFile = parse_json(&text).unwrap();
        assert_eq!(file, parsed);
        let text2 = to_canonical_json(&parsed).unwrap();
        assert_eq!(text, text2, "serialize ∘ parse is the identity on bytes");
        let cube2 = parsed.to_cubic(&Caps::default()).unwrap();
        assert_eq!(cube2.top().order(), 8);
    }

    #[test]
    fn simplicial_round_trip() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let f = GroupHom::new(c4.clone(), c2.clone(), vec![0, 1, 0, 1]).unwrap();
        let t = TruncatedSimplicialGroup::new(
            vec![c2.clone(), c4.clone()],
            vec![vec![f]],
            vec![],
        )
        .unwrap()
        .coskeleton(1, &Caps::default())
        .unwrap();
        let file = SimplicialFile::from_truncation(&t);
        let text = to_canonical_json(&file).unwrap();
        let parsed: SimplicialFile = parse_json(&text).unwrap();
        assert_eq!(file, parsed);
        let t2 = parsed.to_truncation(&Caps::default()).unwrap();
        assert_eq!(t2.level(1).order(), 8);
    }

    #[test]
    fn masks_render_with_degree_width() {
        assert_eq!(format_mask(5, 3), "0b101");
        assert_eq!(format_mask(1, 2), "0b01");
        assert_eq!(parse_mask("0b101").unwrap(), 5);
        assert!(parse_mask("101").is_err());
    }
}
