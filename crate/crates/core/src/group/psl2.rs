//! PSL2(q): 2x2 matrices of determinant 1 over GF(q) modulo `±I`.

use super::field::FiniteField;
use super::Elem;
use crate::error::Result;

pub(crate) struct Psl2 {
    field: FiniteField,
    mats: Vec<[u32; 4]>,
    /// `(code, index)` sorted by code, for lookup of canonical matrices.
    codes: Vec<(u32, u32)>,
}

pub(crate) fn psl2_order(q: u64) -> u128 {
    let q = q as u128;
    q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 }
}

impl Psl2 {
    /// Enumerates the group. Matrices `[a b; c d]` are represented by the one
    /// of `M`, `-M` with the smaller code `((a q + b) q + c) q + d`; the
    /// identity comes first, the rest in increasing code order.
    pub(crate) fn new(q: u64) -> Result<Self> {
        let field = FiniteField::new(q)?;
        let qq = field.size();
        let mut psl = Psl2 {
            field,
            mats: Vec::new(),
            codes: Vec::new(),
        };
        let f = &psl.field;
        let mut mats = Vec::with_capacity(psl2_order(q) as usize);
        for a in 0..qq {
            for b in 0..qq {
                for c in 0..qq {
                    for d in 0..qq {
                        let m = [a, b, c, d];
                        if f.sub(f.mul(a, d), f.mul(b, c)) == 1 && psl.canonical(m) == m {
                            mats.push(m);
                        }
                    }
                }
            }
        }
        let id = psl.canonical([1, 0, 0, 1]);
        let pos = mats.iter().position(|&m| m == id).expect("identity is enumerated");
        let id = mats.remove(pos);
        mats.insert(0, id);
        let mut codes: Vec<(u32, u32)> = mats
            .iter()
            .enumerate()
            .map(|(i, &m)| (psl.code(m), i as u32))
            .collect();
        codes.sort_unstable();
        psl.mats = mats;
        psl.codes = codes;
        Ok(psl)
    }

    pub(crate) fn order(&self) -> usize {
        self.mats.len()
    }

    fn code(&self, m: [u32; 4]) -> u32 {
        let q = self.field.size();
        ((m[0] * q + m[1]) * q + m[2]) * q + m[3]
    }

    fn canonical(&self, m: [u32; 4]) -> [u32; 4] {
        let neg = m.map(|x| self.field.neg(x));
        if self.code(neg) < self.code(m) {
            neg
        } else {
            m
        }
    }

    fn index_of(&self, m: [u32; 4]) -> Elem {
        let code = self.code(self.canonical(m));
        let pos = self
            .codes
            .binary_search_by_key(&code, |&(c, _)| c)
            .expect("product of group elements lies in the group");
        self.codes[pos].1 as Elem
    }

    pub(crate) fn mul(&self, x: Elem, y: Elem) -> Elem {
        let f = &self.field;
        let [a, b, c, d] = self.mats[x];
        let [e, g, h, k] = self.mats[y];
        let m = [
            f.add(f.mul(a, e), f.mul(b, h)),
            f.add(f.mul(a, g), f.mul(b, k)),
            f.add(f.mul(c, e), f.mul(d, h)),
            f.add(f.mul(c, g), f.mul(d, k)),
        ];
        self.index_of(m)
    }

    pub(crate) fn inverses(&self) -> Vec<u32> {
        let f = &self.field;
        self.mats
            .iter()
            .map(|&[a, b, c, d]| self.index_of([d, f.neg(b), f.neg(c), a]) as u32)
            .collect()
    }

    pub(crate) fn labels(&self) -> Vec<String> {
        self.mats
            .iter()
            .map(|m| format!("[{} {}; {} {}]", m[0], m[1], m[2], m[3]))
            .collect()
    }
}
