//! Small hand-built complexes used by the examples, the tests and `selftest`.

use crate::moves::{DiscData, SidePart, Untelescope};
use crate::model::{
    BoundaryLevel, Complex, Compressionbody, Side, Surface, TangleSummary, ThickLevel, ThinLevel,
};

/// Incremental construction of a complex by thick level.
///
/// Each thick level `H` gets compressionbodies `H.up` and `H.down`. Tangles
/// left unset are filled with the fewest-ghost summary satisfying puncture
/// conservation, and product/ball certificates are set from the boundary
/// data when the complex is built.
#[derive(Debug, Default)]
pub struct Builder {
    c: Complex,
    explicit: Vec<String>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn upper(thick: &str) -> String {
        format!("{thick}.up")
    }

    pub fn lower(thick: &str) -> String {
        format!("{thick}.down")
    }

    pub fn cb_id(thick: &str, side: Side) -> String {
        match side {
            Side::Upper => Self::upper(thick),
            Side::Lower => Self::lower(thick),
        }
    }

    pub fn thick(mut self, id: &str, surface: Surface) -> Self {
        let (up, down) = (Self::upper(id), Self::lower(id));
        self.c.thick.push(ThickLevel { id: id.into(), surface, upper_cb: up.clone(), lower_cb: down.clone() });
        for cb in [up, down] {
            self.c.cbs.push(Compressionbody {
                id: cb,
                plus: id.into(),
                minus: vec![],
                tangle: TangleSummary::EMPTY,
                product_certificate: false,
                ball_certificate: false,
            });
        }
        self
    }

    /// Thin level oriented from `below` up to `above`.
    pub fn thin(mut self, id: &str, surface: Surface, below: &str, above: &str) -> Self {
        let (from, to) = (Self::upper(below), Self::lower(above));
        self.c.thin.push(ThinLevel { id: id.into(), surface, from_cb: from.clone(), to_cb: to.clone() });
        self.cb(&from).minus.push(id.into());
        self.cb(&to).minus.push(id.into());
        self
    }

    pub fn boundary(mut self, id: &str, surface: Surface, thick: &str, side: Side, drilled: bool) -> Self {
        let owner = Self::cb_id(thick, side);
        self.c.boundary.push(BoundaryLevel { id: id.into(), surface, owner: owner.clone(), is_drilled_vertex: drilled });
        self.cb(&owner).minus.push(id.into());
        self
    }

    pub fn tangle(mut self, thick: &str, side: Side, t: TangleSummary) -> Self {
        let id = Self::cb_id(thick, side);
        self.cb(&id).tangle = t;
        self.explicit.push(id);
        self
    }

    pub fn reducible(mut self) -> Self {
        self.c.reducible = true;
        self
    }

    fn cb(&mut self, id: &str) -> &mut Compressionbody {
        self.c.cbs.iter_mut().find(|c| c.id == id).expect("builder cb")
    }

    pub fn build(mut self) -> Complex {
        let ids: Vec<String> = self.c.cbs.iter().map(|c| c.id.clone()).collect();
        for id in ids {
            if self.explicit.contains(&id) {
                continue;
            }
            let cb = self.c.cb(&id).unwrap().clone();
            if let Ok(p) = self.c.profile(&cb) {
                if let Some(t) = TangleSummary::fewest_ghosts(p.plus.punctures, p.minus_punctures()) {
                    self.cb(&id).tangle = t;
                }
            }
        }
        self.c.certify_all();
        self.c.normalize();
        self.c
    }
}

/// A single bridge sphere of a one-bridge knot.
pub fn one_bridge_sphere() -> Complex {
    Builder::new().thick("H", Surface::sphere(2)).build()
}

/// A genus-`g` Heegaard surface between two handlebodies.
pub fn heegaard(g: i64) -> Complex {
    Builder::new().thick("H", Surface::new(g, 0)).build()
}

/// Two thick levels whose flow lines form a loop.
pub fn two_cycle() -> Complex {
    Builder::new()
        .thick("H0", Surface::new(1, 0))
        .thick("H1", Surface::new(1, 0))
        .thin("F0", Surface::sphere(0), "H0", "H1")
        .thin("F1", Surface::sphere(0), "H1", "H0")
        .build()
}

/// `n` torus thick levels stacked with torus thin levels in between.
/// Every compressionbody except the top and bottom handlebodies is a product.
pub fn chain(n: usize) -> Complex {
    let mut b = Builder::new();
    for i in 0..n {
        b = b.thick(&format!("H{i}"), Surface::new(1, 0));
    }
    for i in 1..n {
        b = b.thin(&format!("F{i}"), Surface::new(1, 0), &format!("H{}", i - 1), &format!("H{i}"));
    }
    b.build()
}

/// `H` below `A` and `B`, both below `K`.
pub fn diamond() -> Complex {
    Builder::new()
        .thick("H", Surface::new(2, 0))
        .thick("A", Surface::new(1, 0))
        .thick("B", Surface::new(1, 0))
        .thick("K", Surface::new(2, 0))
        .thin("HA", Surface::new(1, 0), "H", "A")
        .thin("HB", Surface::new(1, 0), "H", "B")
        .thin("AK", Surface::new(1, 0), "A", "K")
        .thin("BK", Surface::new(1, 0), "B", "K")
        .build()
}

/// Two copies of a thrice-punctured ball glued along their outer spheres:
/// a thick sphere with two unpunctured boundary spheres on each side.
pub fn spherical_untelescoping() -> Complex {
    Builder::new()
        .thick("H", Surface::sphere(0))
        .boundary("S1", Surface::sphere(0), "H", Side::Upper, false)
        .boundary("S2", Surface::sphere(0), "H", Side::Upper, false)
        .boundary("S3", Surface::sphere(0), "H", Side::Lower, false)
        .boundary("S4", Surface::sphere(0), "H", Side::Lower, false)
        .reducible()
        .build()
}

/// The untelescoping that splits [`spherical_untelescoping`] along two
/// separating discs, one on each side, each cutting off one boundary sphere.
pub fn spherical_thinning_move() -> Untelescope {
    let part = |port: &str| SidePart { genus: 0, punctures: 0, ports: vec![port.into()], tangle: TangleSummary::EMPTY };
    Untelescope {
        thick: "H".into(),
        disc_minus: DiscData::separating(0, None, part("S3"), part("S4")),
        disc_plus: DiscData::separating(0, None, part("S1"), part("S2")),
    }
}

/// A torus Heegaard surface next to an unrelated one-bridge sphere.
pub fn independent_pair() -> Complex {
    Builder::new().thick("T", Surface::new(1, 0)).thick("S", Surface::sphere(2)).build()
}

/// A punctured torus with a drilled trivalent vertex on each side.
pub fn punctured_torus_with_vertices() -> Complex {
    Builder::new()
        .thick("H", Surface::new(1, 3))
        .boundary("V1", Surface::sphere(3), "H", Side::Upper, true)
        .boundary("V2", Surface::sphere(3), "H", Side::Lower, true)
        .build()
}

/// A four-bridge-point sphere with two bridges on each side: a perturbed
/// one-bridge position of the unknot.
pub fn perturbed_sphere() -> Complex {
    Builder::new()
        .thick("H", Surface::sphere(4))
        .tangle("H", Side::Upper, TangleSummary::new(0, 2, 0, 0))
        .tangle("H", Side::Lower, TangleSummary::new(0, 2, 0, 0))
        .build()
}

/// Genus-2 thick level below a torus thick level, joined by a product.
/// Consolidating the product leaves a single genus-2 Heegaard surface.
pub fn consolidation_pair() -> Complex {
    Builder::new()
        .thick("H", Surface::new(2, 0))
        .thick("J", Surface::new(1, 0))
        .thin("F", Surface::new(1, 0), "H", "J")
        .build()
}
