#include "fhd/examples.hpp"

#include <stdexcept>

namespace fhd {

namespace {

HenonFactor quadratic_factor(cplx c0_const, cplx c0_lambda) {
    HenonFactor f;
    f.degree = 2;
    f.coeffs.resize(2);
    f.coeffs[0] = CoeffPoly::linear(c0_const, c0_lambda);  // constant term of p
    f.coeffs[1] = CoeffPoly::constant(cplx(0.0, 0.0));     // linear term of p
    f.a = CoeffPoly::constant(cplx(1.0, 0.0));
    return f;
}

}  // namespace

SkewHenonSystem make_henon_example(const std::string& name) {
    SkewHenonSystem sys;
    if (name == "classical") {
        sys.space = BaseSpace::finite({cplx(0.0, 0.0)});
        sys.map = BaseMap::identity_map();
        sys.factors.push_back(quadratic_factor(cplx(0.0, 0.0), cplx(0.0, 0.0)));
    } else if (name == "disc-contraction") {
        sys.space = BaseSpace::disc(0.25);
        sys.map = BaseMap::contraction_by(cplx(0.5, 0.0));
        sys.factors.push_back(quadratic_factor(cplx(0.0, 0.0), cplx(1.0, 0.0)));
    } else if (name == "degree4") {
        sys.space = BaseSpace::finite({cplx(0.0, 0.0)});
        sys.map = BaseMap::identity_map();
        sys.factors.push_back(quadratic_factor(cplx(0.0, 0.0), cplx(0.0, 0.0)));
        sys.factors.push_back(quadratic_factor(cplx(0.0, 0.0), cplx(0.0, 0.0)));
    } else {
        throw std::invalid_argument("unknown Henon example: " + name);
    }
    sys.validate();
    return sys;
}

PkSkewSystem make_pk_example(const std::string& name) {
    PkSkewSystem sys;
    sys.k = 1;
    sys.degree = 2;
    sys.components.resize(2);
    auto term = [](unsigned e0, unsigned e1, CoeffPoly c) {
        HomogPoly::Term t;
        t.exps = {e0, e1};
        t.coef = std::move(c);
        return t;
    };
    if (name == "pk-squares") {
        sys.space = BaseSpace::finite({cplx(0.0, 0.0)});
        sys.map = BaseMap::identity_map();
        sys.components[0].terms.push_back(term(2, 0, CoeffPoly::constant(cplx(1.0, 0.0))));
        sys.components[1].terms.push_back(term(0, 2, CoeffPoly::constant(cplx(1.0, 0.0))));
    } else if (name == "pk-perturbed") {
        sys.space = BaseSpace::disc(0.2);
        sys.map = BaseMap::identity_map();
        sys.components[0].terms.push_back(term(2, 0, CoeffPoly::constant(cplx(1.0, 0.0))));
        sys.components[0].terms.push_back(term(0, 2, CoeffPoly::linear(cplx(0.0, 0.0), cplx(1.0, 0.0))));
        sys.components[1].terms.push_back(term(0, 2, CoeffPoly::constant(cplx(1.0, 0.0))));
        sys.components[1].terms.push_back(term(2, 0, CoeffPoly::linear(cplx(0.0, 0.0), cplx(1.0, 0.0))));
    } else {
        throw std::invalid_argument("unknown pk example: " + name);
    }
    sys.validate();
    return sys;
}

bool is_pk_example(const std::string& name) {
    return name == "pk-squares" || name == "pk-perturbed";
}

std::vector<std::string> example_names() {
    return {"classical", "disc-contraction", "degree4", "pk-squares", "pk-perturbed"};
}

}  // namespace fhd
