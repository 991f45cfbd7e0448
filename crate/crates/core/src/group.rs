//! Finite groups of integer matrices, enumerated by closure under their
//! generators, with conjugacy classes and centralizers.

use std::collections::VecDeque;
use std::hash::{BuildHasher, BuildHasherDefault, DefaultHasher};

use hashbrown::HashTable;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::intmat::IntMatrix;

/// Index of an element inside its [`MatrixGroup`]. Index 0 is the identity.
pub type ElemId = usize;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ConjugacyClass {
    pub representative: ElemId,
    pub size: usize,
    pub centralizer_order: usize,
}

/// A finite matrix group with every element materialized.
///
/// Elements are packed as `i8` entries in one arena; Weyl group elements in
/// the simple-coroot basis have small entries, and anything else is refused.
pub struct MatrixGroup {
    dim: usize,
    generators: Vec<IntMatrix>,
    arena: Vec<i8>,
    table: HashTable<u32>,
    hasher: BuildHasherDefault<DefaultHasher>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u32>,
}

/// A Weyl group is just a matrix group acting on the coroot lattice.
pub type WeylGroup = MatrixGroup;

impl std::fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatrixGroup")
            .field("dim", &self.dim)
            .field("order", &self.len())
            .field("classes", &self.classes.len())
            .finish()
    }
}

impl MatrixGroup {
    /// Closes `generators` under multiplication. Fails if a generator is not
    /// unimodular or the closure grows beyond `cap` elements.
    pub fn generate(dim: usize, generators: Vec<IntMatrix>, cap: u64) -> Result<Self> {
        for g in &generators {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::Dimension(format!(
                    "generator is {}x{}, expected {dim}x{dim}",
                    g.rows(),
                    g.cols()
                )));
            }
            let d = g.det();
            if d.abs() != 1 {
                return Err(Error::NotUnimodular(d));
            }
        }
        let mut group = MatrixGroup {
            dim,
            generators,
            arena: Vec::new(),
            table: HashTable::new(),
            hasher: Default::default(),
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        group.insert(&pack(&IntMatrix::identity(dim))?);
        let gens: Vec<Vec<i8>> = group.generators.iter().map(pack).collect::<Result<_>>()?;
        let mut buf = vec![0i8; dim * dim];
        let mut i = 0;
        while i < group.len() {
            for g in &gens {
                mul_packed(group.slice(i), g, dim, &mut buf)?;
                if group.find(&buf).is_none() {
                    if group.len() as u64 >= cap {
                        return Err(Error::CapReached {
                            what: "group closure".into(),
                            cap,
                        });
                    }
                    group.insert(&buf);
                }
            }
            i += 1;
        }
        group.compute_classes()?;
        Ok(group)
    }

    fn hash_slice(&self, s: &[i8]) -> u64 {
        self.hasher.hash_one(s)
    }

    fn find(&self, key: &[i8]) -> Option<ElemId> {
        let h = self.hash_slice(key);
        let n = self.dim * self.dim;
        self.table
            .find(h, |&i| &self.arena[i as usize * n..(i as usize + 1) * n] == key)
            .map(|&i| i as usize)
    }

    fn insert(&mut self, key: &[i8]) -> ElemId {
        let id = self.len();
        let h = self.hash_slice(key);
        self.arena.extend_from_slice(key);
        let n = self.dim * self.dim;
        let arena = &self.arena;
        let hasher = &self.hasher;
        self.table.insert_unique(h, id as u32, |&i| {
            hasher.hash_one(&arena[i as usize * n..(i as usize + 1) * n])
        });
        id
    }

    fn slice(&self, i: ElemId) -> &[i8] {
        let n = self.dim * self.dim;
        &self.arena[i * n..(i + 1) * n]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.arena.len() / (self.dim * self.dim).max(1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn order(&self) -> u64 {
        self.len() as u64
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn element(&self, i: ElemId) -> IntMatrix {
        IntMatrix::from_flat(self.dim, self.dim, self.slice(i).iter().map(|&x| x as i64).collect())
    }

    pub fn elements(&self) -> impl Iterator<Item = IntMatrix> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<ElemId> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return None;
        }
        pack(m).ok().and_then(|p| self.find(&p))
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.index_of(m).is_some()
    }

    pub fn multiply(&self, a: ElemId, b: ElemId) -> ElemId {
        let mut buf = vec![0i8; self.dim * self.dim];
        mul_packed(self.slice(a), self.slice(b), self.dim, &mut buf).expect("product of group elements stays in range");
        self.find(&buf).expect("group is closed under products")
    }

    pub fn inverse(&self, a: ElemId) -> ElemId {
        let mut prev = 0;
        let mut cur = a;
        while cur != 0 {
            prev = cur;
            cur = self.multiply(cur, a);
        }
        prev
    }

    pub fn element_order(&self, a: ElemId) -> usize {
        let mut k = 1;
        let mut cur = a;
        while cur != 0 {
            cur = self.multiply(cur, a);
            k += 1;
        }
        k
    }

    /// Whether elements `a` and `b` commute; exits on the first differing entry.
    pub fn commute(&self, a: ElemId, b: ElemId) -> bool {
        let n = self.dim;
        let (x, y) = (self.slice(a), self.slice(b));
        for i in 0..n {
            for j in 0..n {
                let mut xy = 0i32;
                let mut yx = 0i32;
                for k in 0..n {
                    xy += x[i * n + k] as i32 * y[k * n + j] as i32;
                    yx += y[i * n + k] as i32 * x[k * n + j] as i32;
                }
                if xy != yx {
                    return false;
                }
            }
        }
        true
    }

    fn compute_classes(&mut self) -> Result<()> {
        let n = self.len();
        let gens: Vec<ElemId> = self
            .generators
            .iter()
            .map(|g| self.index_of(g).expect("generators are elements"))
            .collect();
        let inv: Vec<ElemId> = gens.iter().map(|&g| self.inverse(g)).collect();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let cid = classes.len() as u32;
            class_of[start] = cid;
            queue.push_back(start);
            let mut size = 0;
            while let Some(x) = queue.pop_front() {
                size += 1;
                for (&s, &si) in gens.iter().zip(&inv) {
                    let y = self.multiply(self.multiply(s, x), si);
                    if class_of[y] == u32::MAX {
                        class_of[y] = cid;
                        queue.push_back(y);
                    }
                }
            }
            classes.push(ConjugacyClass {
                representative: start,
                size,
                centralizer_order: n / size,
            });
        }
        self.classes = classes;
        self.class_of = class_of;
        Ok(())
    }

    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, a: ElemId) -> usize {
        self.class_of[a] as usize
    }

    /// All elements commuting with `a`.
    pub fn centralizer(&self, a: ElemId, exec: Exec) -> Vec<ElemId> {
        exec.filter_range(self.len(), |h| self.commute(a, h))
    }
}

fn pack(m: &IntMatrix) -> Result<Vec<i8>> {
    m.as_slice()
        .iter()
        .map(|&x| i8::try_from(x).map_err(|_| Error::EntryOverflow(x)))
        .collect()
}

fn mul_packed(a: &[i8], b: &[i8], n: usize, out: &mut [i8]) -> Result<()> {
    for i in 0..n {
        for j in 0..n {
            let mut s = 0i64;
            for k in 0..n {
                s += a[i * n + k] as i64 * b[k * n + j] as i64;
            }
            out[i * n + j] = i8::try_from(s).map_err(|_| Error::EntryOverflow(s))?;
        }
    }
    Ok(())
}
