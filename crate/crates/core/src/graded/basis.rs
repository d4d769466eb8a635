use std::collections::BTreeMap;

use serde::Serialize;

/// Which tensor space a [`TensorBasis`] indexes, for one total degree `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TensorShape {
    /// `(KX* ⊗ KX*)_d`
    FreePair,
    /// `(KX* ⊗ KX ⊗ KX*)_d`
    FreeGenerator,
    /// `(F_R)_d = (KX* ⊗ KR ⊗ KX*)_d`
    FreeRelation,
    /// `(A ⊗ A)_d`
    AlgebraPair,
    /// `(A ⊗ KX ⊗ A)_d`
    AlgebraGenerator,
    /// `(A ⊗ KR ⊗ A)_d`
    AlgebraRelation,
}

/// A basis element `left ⊗ middle ⊗ right`; `left`/`right` index a basis of
/// the outer factor in degrees `left_deg`/`right_deg` (word ranks for the free
/// algebra, coset-representative positions for `A`), `middle` indexes the
/// generator or relation symbol (always 0 for pair shapes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorLabel {
    pub left_deg: usize,
    pub middle: usize,
    pub right_deg: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug)]
struct Block {
    left_deg: usize,
    middle: usize,
    right_deg: usize,
    right_dim: usize,
    offset: usize,
    len: usize,
}

/// Ordered basis of a degree-`d` component of a triple tensor product.
///
/// Blocks are ordered by left degree, then middle symbol; inside a block the
/// order is lexicographic in `(left, right)`.
#[derive(Clone, Debug)]
pub struct TensorBasis {
    shape: TensorShape,
    degree: usize,
    blocks: Vec<Block>,
    lookup: BTreeMap<(usize, usize), usize>,
    len: usize,
}

impl TensorBasis {
    /// `outer_dims[p]` is the dimension of the outer factor in degree `p`;
    /// `middle_degrees[s]` the degree of middle symbol `s`.
    pub fn new(shape: TensorShape, degree: usize, outer_dims: &[usize], middle_degrees: &[usize]) -> Self {
        let mut blocks = Vec::new();
        let mut lookup = BTreeMap::new();
        let mut offset = 0;
        for left_deg in 0..=degree {
            for (middle, &md) in middle_degrees.iter().enumerate() {
                if left_deg + md > degree {
                    continue;
                }
                let right_deg = degree - left_deg - md;
                let len = outer_dims[left_deg] * outer_dims[right_deg];
                lookup.insert((left_deg, middle), blocks.len());
                blocks.push(Block { left_deg, middle, right_deg, right_dim: outer_dims[right_deg], offset, len });
                offset += len;
            }
        }
        Self { shape, degree, blocks, lookup, len: offset }
    }

    pub fn shape(&self) -> TensorShape {
        self.shape
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn index(&self, left_deg: usize, middle: usize, left: usize, right: usize) -> usize {
        let b = &self.blocks[self.lookup[&(left_deg, middle)]];
        debug_assert!(right < b.right_dim && left * b.right_dim + right < b.len);
        b.offset + left * b.right_dim + right
    }

    pub fn label(&self, idx: usize) -> TensorLabel {
        let k = self.blocks.partition_point(|b| b.offset + b.len <= idx);
        let b = &self.blocks[k];
        let local = idx - b.offset;
        TensorLabel {
            left_deg: b.left_deg,
            middle: b.middle,
            right_deg: b.right_deg,
            left: local / b.right_dim,
            right: local % b.right_dim,
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = TensorLabel> + '_ {
        (0..self.len).map(|i| self.label(i))
    }
}
