use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;

use super::{CMat, KleinError};
use crate::arith::{CycloNum, Field};

/// Hash key of a matrix with entries in `Q(ζ_11)`: every entry lifted to
/// conductor 11 and taken in canonical form.
pub(crate) type MatKey = Vec<(Vec<BigInt>, BigInt)>;

pub(crate) fn mat_key(m: &CMat) -> MatKey {
    m.entries()
        .iter()
        .map(|e| {
            let l = e.lift(11);
            let (num, den) = l.raw_parts();
            (num.to_vec(), den.clone())
        })
        .collect()
}

/// A conjugacy class of the generated group.
#[derive(Clone, Debug)]
pub struct ConjClass {
    /// Column name in the character table (`1`, `c`, `c2`, `a`, `a2`, `b`, `b2`, `b3`),
    /// or `k<i>` for groups other than `PSL(2, F_11)`.
    pub label: String,
    pub representative: usize,
    pub order: u32,
    pub members: Vec<usize>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A finite matrix group with its full multiplication table.
#[derive(Clone, Debug)]
pub struct GroupTable {
    elements: Vec<CMat>,
    index: HashMap<MatKey, usize>,
    generators: Vec<usize>,
    product: Vec<u16>,
    inverse: Vec<usize>,
    order: Vec<u32>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
}

impl GroupTable {
    /// Breadth-first closure of `gens` under multiplication.
    ///
    /// Fails once more than `cap` distinct matrices have been found.
    pub fn generate(gens: &[CMat], cap: usize) -> Result<GroupTable, KleinError> {
        assert!(!gens.is_empty(), "at least one generator is required");
        assert!(cap <= u16::MAX as usize, "cap too large for the product table");
        let n = gens[0].rows();
        let id = CMat::identity(n);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(mat_key(&id), 0usize);
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        // right[s][g] = index of g·s
        let mut right: Vec<Vec<usize>> = vec![Vec::new(); gens.len()];
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for (s, gen) in gens.iter().enumerate() {
                let h = elements[g].mul(gen);
                let key = mat_key(&h);
                let idx = match index.get(&key) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len();
                        if i >= cap {
                            return Err(KleinError::ClosureExceeded { cap });
                        }
                        index.insert(key, i);
                        elements.push(h);
                        let mut w = words[g].clone();
                        w.push(s as u8);
                        words.push(w);
                        queue.push_back(i);
                        i
                    }
                };
                if right[s].len() <= g {
                    right[s].resize(g + 1, usize::MAX);
                }
                right[s][g] = idx;
            }
        }
        let size = elements.len();
        let mut product = vec![0u16; size * size];
        for (j, w) in words.iter().enumerate() {
            for i in 0..size {
                let mut k = i;
                for &s in w {
                    k = right[s as usize][k];
                }
                product[i * size + j] = k as u16;
            }
        }
        let mut inverse = vec![usize::MAX; size];
        for i in 0..size {
            for j in 0..size {
                if product[i * size + j] == 0 {
                    inverse[i] = j;
                    break;
                }
            }
        }
        let mut order = vec![0u32; size];
        for (i, o) in order.iter_mut().enumerate() {
            let mut k = i;
            let mut e = 1;
            while k != 0 {
                k = product[k * size + i] as usize;
                e += 1;
            }
            *o = e;
        }
        let generators = gens.iter().map(|g| index[&mat_key(g)]).collect();
        let mut table = GroupTable {
            elements,
            index,
            generators,
            product,
            inverse,
            order,
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        table.compute_classes();
        Ok(table)
    }

    fn compute_classes(&mut self) {
        let size = self.len();
        let mut class_of = vec![usize::MAX; size];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..size {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = vec![start];
            class_of[start] = c;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &s in &self.generators {
                    let y = self.mul(self.mul(self.inverse[s], x), s);
                    if class_of[y] == usize::MAX {
                        class_of[y] = c;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        self.class_of = class_of;
        self.classes = classes
            .into_iter()
            .enumerate()
            .map(|(i, members)| ConjClass {
                label: format!("k{i}"),
                representative: members[0],
                order: self.order[members[0]],
                members,
            })
            .collect();
    }

    /// Relabels and reorders the classes as in the character table of
    /// `PSL(2, F_11)`: `1, c, c2, a, a2, b, b2, b3`, where `a` and `c` are the
    /// given elements and `b` is any element of order 6.
    pub(crate) fn label_psl2_11(&mut self, a: usize, c: usize) -> Result<(), KleinError> {
        let b = (0..self.len())
            .find(|&g| self.order[g] == 6)
            .ok_or_else(|| KleinError::BrokenTable("no element of order 6".into()))?;
        let wanted = [
            ("1", 0),
            ("c", c),
            ("c2", self.power(c, 2)),
            ("a", a),
            ("a2", self.power(a, 2)),
            ("b", b),
            ("b2", self.power(b, 2)),
            ("b3", self.power(b, 3)),
        ];
        let mut reordered = Vec::with_capacity(8);
        for (label, g) in wanted {
            let k = self.class_of[g];
            if reordered.iter().any(|cl: &ConjClass| cl.members == self.classes[k].members) {
                return Err(KleinError::BrokenTable(format!("class {label} coincides with another")));
            }
            let mut cl = self.classes[k].clone();
            cl.label = label.to_string();
            cl.representative = g;
            reordered.push(cl);
        }
        if reordered.len() != self.classes.len() {
            return Err(KleinError::BrokenTable(format!(
                "expected 8 classes, found {}",
                self.classes.len()
            )));
        }
        for (i, cl) in reordered.iter().enumerate() {
            for &m in &cl.members {
                self.class_of[m] = i;
            }
        }
        self.classes = reordered;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &CMat {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[CMat] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn find(&self, m: &CMat) -> Option<usize> {
        self.index.get(&mat_key(m)).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.product[i * self.len() + j] as usize
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn power(&self, i: usize, e: u32) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, i))
    }

    pub fn order_of(&self, i: usize) -> u32 {
        self.order[i]
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> &ConjClass {
        &self.classes[self.class_of[i]]
    }

    pub fn class_by_label(&self, label: &str) -> Option<&ConjClass> {
        self.classes.iter().find(|c| c.label == label)
    }

    /// Trace of the defining matrix.
    pub fn trace(&self, i: usize) -> CycloNum {
        self.elements[i].trace()
    }

    /// `(1/|G|) Σ_g χ₁(g) · conj(χ₂(g))`, summed class by class.
    pub fn inner_product(
        &self,
        chi1: impl Fn(usize) -> CycloNum,
        chi2: impl Fn(usize) -> CycloNum,
    ) -> CycloNum {
        let total = self.classes.iter().fold(CycloNum::zero(), |acc, cl| {
            let g = cl.representative;
            acc + chi1(g) * chi2(g).conj() * CycloNum::from_i64(cl.size() as i64)
        });
        total * CycloNum::from_i64(self.len() as i64).inv()
    }
}
