#include "ctlehc/frontend.hpp"

namespace ctlehc {

namespace {

Formula nnf(const Formula& f, bool neg) {
  switch (f->kind) {
    case FKind::Atom:
      return neg ? fm::atom(ex::not_(f->atom)) : f;
    case FKind::Not:
      return nnf(f->kids[0], !neg);
    case FKind::And:
    case FKind::Or: {
      std::vector<Formula> ks;
      for (const auto& k : f->kids) ks.push_back(nnf(k, neg));
      bool conj = (f->kind == FKind::And) != neg;
      return conj ? fm::and_(std::move(ks)) : fm::or_(std::move(ks));
    }
    case FKind::E: return neg ? fm::A(nnf(f->kids[0], true)) : fm::E(nnf(f->kids[0], false));
    case FKind::A: return neg ? fm::E(nnf(f->kids[0], true)) : fm::A(nnf(f->kids[0], false));
    case FKind::Ef: return neg ? fm::Af(nnf(f->kids[0], true)) : fm::Ef(nnf(f->kids[0], false));
    case FKind::Af: return neg ? fm::Ef(nnf(f->kids[0], true)) : fm::Af(nnf(f->kids[0], false));
    case FKind::X:
      return fm::X(nnf(f->kids[0], neg));
    case FKind::G:
      if (neg) return fm::U(fm::atom(ex::t()), nnf(f->kids[0], true));
      return fm::G(nnf(f->kids[0], false));
    case FKind::F:
      if (neg) return fm::G(nnf(f->kids[0], true));
      return fm::U(fm::atom(ex::t()), nnf(f->kids[0], false));
    case FKind::U: {
      if (!neg) return fm::U(nnf(f->kids[0], false), nnf(f->kids[1], false));
      auto na = nnf(f->kids[0], true);
      auto nb = nnf(f->kids[1], true);
      return fm::or_(fm::U(nb, fm::and_(na, nb)), fm::G(nb));
    }
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

}  // namespace ctlehc
