//! Support graph: who rests on whom.

use super::{ObjectId, Scene, SimError, SupportRef};
use crate::geometry::point_in_polygon;
use std::collections::BTreeMap;

/// Resolved supporter per object, plus stacking heights.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportGraph {
    supporters: BTreeMap<ObjectId, SupportRef>,
    base_z: BTreeMap<ObjectId, f64>,
}

impl SupportGraph {
    pub fn supporter(&self, id: &ObjectId) -> &SupportRef {
        self.supporters.get(id).unwrap_or(&SupportRef::Desktop)
    }

    pub fn base_z(&self, id: &ObjectId) -> Option<f64> {
        self.base_z.get(id).copied()
    }

    /// Ids this object transitively rests on (nearest first).
    pub fn chain(&self, id: &ObjectId) -> Vec<ObjectId> {
        let mut out = Vec::new();
        let mut cur = self.supporter(id);
        while let SupportRef::Object(under) = cur {
            out.push(under.clone());
            cur = self.supporter(under);
        }
        out
    }

    /// Number of objects underneath (0 = directly on the desktop).
    pub fn depth(&self, id: &ObjectId) -> usize {
        self.chain(id).len()
    }

    /// Ids resting directly on `id`.
    pub fn riders(&self, id: &ObjectId) -> Vec<ObjectId> {
        self.supporters
            .iter()
            .filter(|(_, s)| matches!(s, SupportRef::Object(under) if under == id))
            .map(|(k, _)| k.clone())
            .collect()
    }
}

/// Resolve each object's supporter from geometry alone: the topmost object
/// whose footprint contains its center, else the desktop.
///
/// Mutual containment (a small object centered on a large sheet puts each
/// center inside the other's footprint) resolves by area: the smaller
/// footprint rests on the larger. Remaining candidates are ranked by
/// resolved top height, so an object lying across a stack attaches to the
/// stack's top, not its base.
pub fn support_graph(scene: &Scene) -> Result<SupportGraph, SimError> {
    let objs = &scene.objects;
    let n = objs.len();
    let footprints: Vec<_> = objs.iter().map(|o| o.world_footprint()).collect();
    let areas: Vec<f64> = footprints.iter().map(|f| f.area()).collect();

    // candidates[i] = indices that could support i.
    let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i == j || !point_in_polygon(objs[i].center(), &footprints[j]) {
                continue;
            }
            let mutual = point_in_polygon(objs[j].center(), &footprints[i]);
            if mutual {
                let near_equal =
                    (areas[i] - areas[j]).abs() <= 1e-9 * areas[i].max(areas[j]);
                if near_equal {
                    // Equal footprints dead on top of each other (a book
                    // stack): geometry cannot order the pair, so keep the
                    // declared stacking edge and nothing else.
                    let declared = matches!(
                        &objs[i].supported_by,
                        SupportRef::Object(u) if u == &objs[j].id
                    );
                    if !declared {
                        continue;
                    }
                } else if areas[j] <= areas[i] {
                    continue; // the smaller of a mutual pair is the rider
                }
            }
            candidates[i].push(j);
        }
    }

    let mut supporters: Vec<Option<SupportRef>> = vec![None; n];
    let mut top_z: Vec<f64> = vec![0.0; n];
    let mut resolved = vec![false; n];
    let table_z = scene.table_z();
    loop {
        let mut progressed = false;
        for i in 0..n {
            if resolved[i] || candidates[i].iter().any(|&j| !resolved[j]) {
                continue;
            }
            let best = candidates[i]
                .iter()
                .copied()
                .max_by(|&a, &b| {
                    top_z[a]
                        .total_cmp(&top_z[b])
                        // Equal heights: the innermost (smallest) candidate
                        // is the nearest surface; final tie on id.
                        .then(areas[b].total_cmp(&areas[a]))
                        .then_with(|| objs[b].id.cmp(&objs[a].id))
                })
                .map(|j| (j, top_z[j]));
            let (sup, base) = match best {
                Some((j, z)) => (SupportRef::Object(objs[j].id.clone()), z),
                None => (SupportRef::Desktop, table_z),
            };
            supporters[i] = Some(sup);
            top_z[i] = base + objs[i].height;
            resolved[i] = true;
            progressed = true;
        }
        if resolved.iter().all(|&r| r) {
            break;
        }
        if !progressed {
            let stuck = (0..n).find(|&i| !resolved[i]).expect("unresolved exists");
            return Err(SimError::CyclicSupport(objs[stuck].id.clone()));
        }
    }

    let mut sup_map = BTreeMap::new();
    let mut base_map = BTreeMap::new();
    for i in 0..n {
        sup_map.insert(objs[i].id.clone(), supporters[i].clone().expect("resolved"));
        base_map.insert(objs[i].id.clone(), top_z[i] - objs[i].height);
    }
    Ok(SupportGraph {
        supporters: sup_map,
        base_z: base_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Polygon, Pose2};
    use crate::perception::TableModel;
    use crate::sim::{Category, Material, ObjectState};

    fn table_scene(objects: Vec<ObjectState>) -> Scene {
        Scene {
            table: TableModel::from_support_polygon(Polygon::rectangle(0.0, 0.0, 0.9, 0.55), 0.0),
            objects,
            pen_holder_region: Polygon::rectangle(-0.22, 0.16, 0.34, 0.18),
            stack_zone: Pose2::new(0.28, 0.16, 0.0),
            rng_seed: 0,
        }
    }

    fn obj(id: &str, cat: Category, cx: f64, cy: f64, w: f64, h: f64, height: f64) -> ObjectState {
        ObjectState {
            id: ObjectId::from(id),
            category: cat,
            footprint: Polygon::rectangle(0.0, 0.0, w, h),
            pose: Pose2::new(cx, cy, 0.0),
            height,
            mass: 0.05,
            material: Material::Rigid,
            supported_by: SupportRef::Desktop,
        }
    }

    #[test]
    fn ruler_on_book_chains_to_desktop() {
        let book = obj("book0", Category::Book, 0.1, 0.0, 0.26, 0.19, 0.012);
        let ruler = obj("ruler0", Category::StraightRuler, 0.1, 0.02, 0.30, 0.035, 0.002);
        let scene = table_scene(vec![book, ruler]);
        let g = support_graph(&scene).unwrap();
        assert_eq!(
            g.supporter(&ObjectId::from("ruler0")),
            &SupportRef::Object(ObjectId::from("book0"))
        );
        assert_eq!(g.supporter(&ObjectId::from("book0")), &SupportRef::Desktop);
        assert_eq!(g.depth(&ObjectId::from("ruler0")), 1);
        assert!((g.base_z(&ObjectId::from("ruler0")).unwrap() - 0.012).abs() < 1e-12);
    }

    #[test]
    fn disjoint_objects_rest_on_desktop() {
        let a = obj("a", Category::Eraser, -0.2, 0.0, 0.06, 0.022, 0.012);
        let b = obj("b", Category::Pen, 0.2, 0.0, 0.14, 0.008, 0.008);
        let g = support_graph(&table_scene(vec![a, b])).unwrap();
        assert_eq!(g.supporter(&ObjectId::from("a")), &SupportRef::Desktop);
        assert_eq!(g.supporter(&ObjectId::from("b")), &SupportRef::Desktop);
    }

    #[test]
    fn eraser_on_paper_on_table() {
        let paper = obj("paper0", Category::Paper, 0.0, 0.0, 0.297, 0.21, 0.0005);
        let eraser = obj("eraser0", Category::Eraser, 0.0, 0.0, 0.06, 0.022, 0.012);
        let g = support_graph(&table_scene(vec![paper, eraser])).unwrap();
        // Mutual containment (eraser dead-center on the sheet): the smaller
        // footprint is the rider.
        assert_eq!(
            g.supporter(&ObjectId::from("eraser0")),
            &SupportRef::Object(ObjectId::from("paper0"))
        );
        assert_eq!(g.supporter(&ObjectId::from("paper0")), &SupportRef::Desktop);
    }

    #[test]
    fn identical_stacked_books_keep_declared_order() {
        let base = obj("base", Category::Book, 0.28, 0.16, 0.26, 0.19, 0.012);
        let mut top = obj("top", Category::Book, 0.28, 0.16, 0.26, 0.19, 0.012);
        top.supported_by = SupportRef::Object(ObjectId::from("base"));
        let g = support_graph(&table_scene(vec![base, top])).unwrap();
        assert_eq!(
            g.supporter(&ObjectId::from("top")),
            &SupportRef::Object(ObjectId::from("base"))
        );
        assert_eq!(g.supporter(&ObjectId::from("base")), &SupportRef::Desktop);
        assert!((g.base_z(&ObjectId::from("top")).unwrap() - 0.012).abs() < 1e-12);
    }

    #[test]
    fn object_across_a_stack_attaches_to_the_top() {
        let paper = obj("paper0", Category::Paper, 0.0, 0.0, 0.297, 0.21, 0.0005);
        let book = obj("book0", Category::Book, 0.0, 0.02, 0.26, 0.19, 0.012);
        let ruler = obj("ruler0", Category::StraightRuler, 0.0, 0.0, 0.30, 0.035, 0.002);
        let g = support_graph(&table_scene(vec![paper, book, ruler])).unwrap();
        // Ruler center is inside both the book and the paper; the book is
        // the taller resolved surface.
        assert_eq!(
            g.supporter(&ObjectId::from("ruler0")),
            &SupportRef::Object(ObjectId::from("book0"))
        );
        assert_eq!(
            g.supporter(&ObjectId::from("book0")),
            &SupportRef::Object(ObjectId::from("paper0"))
        );
    }
}
