use std::sync::Arc;

use super::{finite::mismatch, FiniteWord, LazyWord, ModAlphabet, Symbol};
use crate::{Error, Result};

/// A monoid homomorphism on words over a [`ModAlphabet`], given by the image
/// of each letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    alphabet: ModAlphabet,
    images: Arc<[Vec<Symbol>]>,
}

impl Morphism {
    /// `images[j]` is the image of letter `j`; there must be exactly `m` of
    /// them and every image symbol must lie in the alphabet.
    pub fn new(alphabet: ModAlphabet, images: Vec<Vec<Symbol>>) -> Result<Self> {
        if images.len() != alphabet.modulus() as usize {
            return Err(Error::Domain(format!(
                "a morphism over {} letters needs {} images, got {}",
                alphabet.modulus(),
                alphabet.modulus(),
                images.len()
            )));
        }
        for image in &images {
            alphabet.check_all(image)?;
        }
        Ok(Self {
            alphabet,
            images: images.into(),
        })
    }

    pub fn alphabet(&self) -> ModAlphabet {
        self.alphabet
    }

    /// Image of a single letter. Panics if `j` is outside the alphabet.
    #[inline]
    pub fn image(&self, j: Symbol) -> &[Symbol] {
        &self.images[j as usize]
    }

    pub fn image_word(&self, j: Symbol) -> Result<FiniteWord> {
        self.alphabet.check(j)?;
        Ok(FiniteWord::from_trusted(self.alphabet, self.image(j).to_vec()))
    }

    /// `φ(w_0) φ(w_1) … φ(w_k)`; the empty word maps to the empty word.
    pub fn apply(&self, word: &FiniteWord) -> Result<FiniteWord> {
        if word.alphabet() != self.alphabet {
            return Err(mismatch(word));
        }
        Ok(FiniteWord::from_trusted(
            self.alphabet,
            self.apply_symbols(word.symbols()),
        ))
    }

    pub(crate) fn apply_symbols(&self, symbols: &[Symbol]) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(self.image_length_hint() * symbols.len());
        for &s in symbols {
            out.extend_from_slice(self.image(s));
        }
        out
    }

    /// `φ` extended to right-infinite words. Erasing morphisms are rejected,
    /// since the image of an infinite word could then fail to be infinite.
    pub fn apply_lazy(&self, word: &LazyWord) -> Result<LazyWord> {
        if word.alphabet() != self.alphabet {
            return Err(Error::InvalidSymbol {
                symbol: word.alphabet().modulus() - 1,
                modulus: self.alphabet.modulus(),
            });
        }
        if self.is_erasing() {
            return Err(Error::Precondition(
                "an erasing morphism cannot be applied to an infinite word".into(),
            ));
        }
        Ok(LazyWord::image(self.clone(), word.clone()))
    }

    /// `self ∘ other`, i.e. `j ↦ self(other(j))`.
    pub fn compose(&self, other: &Morphism) -> Result<Morphism> {
        if self.alphabet != other.alphabet {
            return Err(Error::Domain("cannot compose morphisms over different alphabets".into()));
        }
        let images = other.images.iter().map(|w| self.apply_symbols(w)).collect();
        Ok(Morphism {
            alphabet: self.alphabet,
            images,
        })
    }

    /// `φ^k` with `φ^1 = φ`. `k = 0` is rejected.
    pub fn power(&self, k: u32) -> Result<Morphism> {
        if k == 0 {
            return Err(Error::Domain("morphism powers start at 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `Some(k)` when every image has length `k`.
    pub fn uniformity(&self) -> Option<usize> {
        let k = self.images[0].len();
        self.images.iter().all(|w| w.len() == k).then_some(k)
    }

    pub fn is_prolongable(&self, j: Symbol) -> bool {
        self.alphabet.contains(j) && self.image(j).first() == Some(&j)
    }

    pub fn is_erasing(&self) -> bool {
        self.images.iter().any(Vec::is_empty)
    }

    /// The fixed point `j x φ(x) φ²(x) …` based on a letter with `φ(j) = j x`.
    ///
    /// Requires `|φ(j)| ≥ 2` and a non-erasing morphism, which together make
    /// the fixed point infinite.
    pub fn fixed_point(&self, j: Symbol) -> Result<LazyWord> {
        self.alphabet.check(j)?;
        if !self.is_prolongable(j) {
            return Err(Error::Precondition(format!("morphism is not prolongable on {j}")));
        }
        if self.image(j).len() < 2 {
            return Err(Error::Precondition(format!(
                "image of {j} must have length at least 2 for the orbit to grow"
            )));
        }
        if self.is_erasing() {
            return Err(Error::Precondition(
                "fixed points of erasing morphisms may be finite".into(),
            ));
        }
        Ok(LazyWord::fixed_point(self.clone(), j))
    }

    fn image_length_hint(&self) -> usize {
        self.uniformity().unwrap_or(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn alphabet(m: u32) -> ModAlphabet {
        ModAlphabet::new(m).unwrap()
    }

    /// `j ↦ j, j+1, …, j+m−1`, built by hand here so these tests do not lean
    /// on the `tm` module.
    fn shift_morphism(m: u32) -> Morphism {
        let images = (0..m).map(|j| (0..m).map(|i| (j + i) % m).collect()).collect();
        Morphism::new(alphabet(m), images).unwrap()
    }

    fn word(m: u32, s: &[Symbol]) -> FiniteWord {
        FiniteWord::from_symbols(m, s).unwrap()
    }

    #[test]
    fn apply_examples() {
        let phi3 = shift_morphism(3);
        assert_eq!(phi3.apply(&word(3, &[0])).unwrap().symbols(), &[0, 1, 2]);
        assert_eq!(shift_morphism(4).apply(&word(4, &[2])).unwrap().symbols(), &[2, 3, 0, 1]);
        assert_eq!(
            shift_morphism(2).apply(&word(2, &[0, 1])).unwrap().symbols(),
            &[0, 1, 1, 0]
        );
        assert!(phi3.apply(&FiniteWord::empty(alphabet(3))).unwrap().is_empty());
        assert!(matches!(
            phi3.apply(&word(4, &[3])),
            Err(Error::InvalidSymbol { .. })
        ));
    }

    #[test]
    fn power_examples() {
        let phi2 = shift_morphism(2).power(2).unwrap();
        assert_eq!(phi2.image(0), &[0, 1, 1, 0]);
        assert_eq!(phi2.image(1), &[1, 0, 0, 1]);
        let phi3 = shift_morphism(3);
        assert_eq!(phi3.power(2).unwrap().image(0), &[0, 1, 2, 1, 2, 0, 2, 0, 1]);
        assert_eq!(phi3.power(1).unwrap(), phi3);
        assert!(matches!(phi3.power(0), Err(Error::Domain(_))));
    }

    #[test]
    fn uniformity_examples() {
        assert_eq!(shift_morphism(5).uniformity(), Some(5));
        let uneven = Morphism::new(alphabet(2), vec![vec![0, 1], vec![1]]).unwrap();
        assert_eq!(uneven.uniformity(), None);
        assert_eq!(shift_morphism(3).power(2).unwrap().uniformity(), Some(9));
    }

    #[test]
    fn prolongability() {
        let phi = shift_morphism(4);
        assert!((0..4).all(|j| phi.is_prolongable(j)));
        let swap = Morphism::new(alphabet(2), vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(!swap.is_prolongable(0));
        assert!(!swap.is_prolongable(1));
        let erasing = Morphism::new(alphabet(2), vec![vec![], vec![1, 0]]).unwrap();
        assert!(!erasing.is_prolongable(0));
        assert!(!phi.is_prolongable(7));
    }

    #[test]
    fn fixed_point_examples() {
        let phi2 = shift_morphism(2);
        assert_eq!(
            phi2.fixed_point(0).unwrap().prefix(8).symbols(),
            &[0, 1, 1, 0, 1, 0, 0, 1]
        );
        assert_eq!(
            shift_morphism(3).fixed_point(0).unwrap().prefix(9).symbols(),
            &[0, 1, 2, 1, 2, 0, 2, 0, 1]
        );
        assert_eq!(phi2.fixed_point(1).unwrap().prefix(4).symbols(), &[1, 0, 0, 1]);
    }

    #[test]
    fn fixed_point_preconditions() {
        let swap = Morphism::new(alphabet(2), vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(matches!(swap.fixed_point(0), Err(Error::Precondition(_))));
        let short = Morphism::new(alphabet(2), vec![vec![0], vec![1, 0]]).unwrap();
        assert!(matches!(short.fixed_point(0), Err(Error::Precondition(_))));
        let erasing = Morphism::new(alphabet(2), vec![vec![0, 1], vec![]]).unwrap();
        assert!(matches!(erasing.fixed_point(0), Err(Error::Precondition(_))));
        assert!(matches!(erasing.apply_lazy(&shift_morphism(2).fixed_point(0).unwrap()), Err(Error::Precondition(_))));
    }

    #[test]
    fn non_uniform_fixed_point() {
        // Fibonacci morphism 0 ↦ 01, 1 ↦ 0.
        let fib = Morphism::new(alphabet(2), vec![vec![0, 1], vec![0]]).unwrap();
        let v = fib.fixed_point(0).unwrap();
        assert_eq!(v.prefix(13).to_string(), "0100101001001");
        let p = v.prefix(200);
        assert_eq!(&fib.apply(&p).unwrap().symbols()[..200], p.symbols());
    }

    #[test]
    fn fixed_point_is_stable_under_the_morphism() {
        for m in 2..=7 {
            let phi = shift_morphism(m);
            let v = phi.fixed_point(0).unwrap();
            let image = phi.apply_lazy(&v).unwrap();
            assert_eq!(image.prefix(5000), v.prefix(5000));
            let mut k_power = phi.clone();
            for k in 1..=6u32 {
                if k > 1 {
                    k_power = phi.compose(&k_power).unwrap();
                }
                let len = (m as usize).pow(k);
                if len > 300_000 {
                    break;
                }
                assert_eq!(v.prefix(len).symbols(), k_power.image(0), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn morphism_construction_validates() {
        assert!(Morphism::new(alphabet(2), vec![vec![0, 1]]).is_err());
        assert!(Morphism::new(alphabet(2), vec![vec![0, 2], vec![1]]).is_err());
    }

    fn small_morphism() -> impl Strategy<Value = Morphism> {
        (2u32..5).prop_flat_map(|m| {
            prop::collection::vec(prop::collection::vec(0..m, 0..4), m as usize)
                .prop_map(move |images| Morphism::new(alphabet(m), images).unwrap())
        })
    }

    proptest! {
        #[test]
        fn homomorphism(phi in small_morphism(), u in prop::collection::vec(any::<u32>(), 0..20), v in prop::collection::vec(any::<u32>(), 0..20)) {
            let m = phi.alphabet().modulus();
            let u = word(m, &u.iter().map(|x| x % m).collect::<Vec<_>>());
            let v = word(m, &v.iter().map(|x| x % m).collect::<Vec<_>>());
            let lhs = phi.apply(&u.concat(&v).unwrap()).unwrap();
            let rhs = phi.apply(&u).unwrap().concat(&phi.apply(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn power_coherence(phi in small_morphism(), a in 1u32..4, b in 1u32..4) {
            let pa = phi.power(a).unwrap();
            let pb = phi.power(b).unwrap();
            let pab = phi.power(a + b).unwrap();
            for j in phi.alphabet().symbols() {
                let via = pa.apply(&pb.image_word(j).unwrap()).unwrap();
                prop_assert_eq!(pab.image(j), via.symbols());
            }
        }

        #[test]
        fn uniform_lengths(m in 2u32..6, k in 1u32..5, w in prop::collection::vec(any::<u32>(), 0..12)) {
            let w = word(m, &w.iter().map(|x| x % m).collect::<Vec<_>>());
            let image = shift_morphism(m).power(k).unwrap().apply(&w).unwrap();
            prop_assert_eq!(image.len(), (m as usize).pow(k) * w.len());
        }
    }
}
