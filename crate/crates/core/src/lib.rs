pub mod classify;
pub mod concealed;
pub mod frames;
pub mod grothendieck;
pub mod knitting;
pub mod linalg;
pub mod linrep;
pub mod poset;
pub mod quiver;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/posets.md")]
    struct Posets;
    #[doc = include_str!("../../../book/src/quivers.md")]
    struct Quivers;
    #[doc = include_str!("../../../book/src/knitting.md")]
    struct Knitting;
    #[doc = include_str!("../../../book/src/fans.md")]
    struct Fans;
    #[doc = include_str!("../../../book/src/concealed.md")]
    struct Concealed;
    #[doc = include_str!("../../../book/src/classification.md")]
    struct Classification;
}
