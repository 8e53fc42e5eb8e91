#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include <gtest/gtest.h>

#include "greedylab/basis.hpp"
#include "greedylab/errors.hpp"
#include "greedylab/rng.hpp"

using namespace greedylab;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

const CatalogEntry& find(const std::vector<CatalogEntry>& cat, const std::string& prefix) {
    for (const auto& e : cat) {
        if (e.id.rfind(prefix, 0) == 0) return e;
    }
    throw std::runtime_error("no catalog entry " + prefix);
}

}  // namespace

TEST(Coefficients, UnitBasisIsIdentity) {
    const auto b = resolve_basis("lp:1.0:3").basis;
    EXPECT_EQ(coefficients(b, vec({3, 1, 2})), vec({3, 1, 2}));
}

TEST(Coefficients, SummingBasis) {
    const BasisSystem b = summing_basis(3);
    EXPECT_EQ(b.vectors().col(1), vec({1, 1, 0}));
    EXPECT_TRUE(coefficients(b, b.vectors().col(1)).isApprox(vec({0, 1, 0})));
    EXPECT_TRUE(coefficients(b, vec({1, 1, 0})).isApprox(vec({0, 1, 0})));
    Matrix expected_duals(3, 3);
    expected_duals << 1, -1, 0, 0, 1, -1, 0, 0, 1;
    EXPECT_TRUE(b.duals().isApprox(expected_duals));
    EXPECT_THROW(coefficients(b, vec({1, 2})), UsageError);
}

TEST(Catalog, DimThreeShapes) {
    const auto cat = make_catalog(3);
    const auto& l1 = find(cat, "lp:1.0:");
    EXPECT_EQ(l1.basis.vectors(), Matrix::Identity(3, 3));
    EXPECT_EQ(l1.basis.duals(), Matrix::Identity(3, 3));
    EXPECT_TRUE(l1.has(Property::unconditional));
    EXPECT_TRUE(l1.has(Property::democratic));

    const auto& blocks = find(cat, "l2blocks:");
    EXPECT_EQ(blocks.basis.vectors(), Matrix::Identity(3, 3));
    EXPECT_EQ(blocks.basis.space().kind(), SpaceKind::l2_blocks);
    EXPECT_EQ(blocks.basis.space().block_sizes(), (std::vector<int>{1, 2}));
    EXPECT_DOUBLE_EQ(blocks.basis.space().p(), 1.0);
}

TEST(Catalog, BiorthogonalReconstructionAndDeterminism) {
    for (int dim : {2, 5, 8, 12}) {
        const auto cat = make_catalog(dim, 7);
        const auto again = make_catalog(dim, 7);
        ASSERT_EQ(cat.size(), again.size());
        ASSERT_GE(cat.size(), 6u);
        Rng rng(dim);
        for (std::size_t i = 0; i < cat.size(); ++i) {
            const BasisSystem& b = cat[i].basis;
            EXPECT_EQ(cat[i].id, again[i].id);
            EXPECT_EQ(b.vectors(), again[i].basis.vectors());
            const double residual = (b.duals() * b.vectors() - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
            EXPECT_LT(residual, 1e-10) << cat[i].id;
            for (int t = 0; t < 20; ++t) {
                Vector f(dim);
                for (int k = 0; k < dim; ++k) f[k] = rng.uniform(-1.0, 1.0);
                EXPECT_LT((b.vectors() * coefficients(b, f) - f).cwiseAbs().maxCoeff(), 1e-10);
            }
        }
    }
}

TEST(Catalog, BlockSizesCoverDimension) {
    for (int dim = 2; dim <= 20; ++dim) {
        const auto blocks = catalog_block_sizes(dim);
        int total = 0;
        for (int b : blocks) total += b;
        EXPECT_EQ(total, dim);
    }
    EXPECT_EQ(catalog_block_sizes(10), (std::vector<int>{1, 2, 3, 4}));
}

TEST(Catalog, RejectsTinyDimension) { EXPECT_THROW(make_catalog(1), UsageError); }

TEST(ResolveBasis, Ids) {
    EXPECT_EQ(resolve_basis("lp:inf:4").basis.space().p(), std::numeric_limits<double>::infinity());
    EXPECT_EQ(resolve_basis("weak:1.0:4").basis.space().kind(), SpaceKind::weak_lp);
    EXPECT_EQ(resolve_basis("lorentz:2.0:1.0:5").basis.size(), 5);
    EXPECT_EQ(resolve_basis("l2blocks:1.0:1+2+3").basis.size(), 6);
    EXPECT_EQ(resolve_basis("perturbed:4:3").basis.size(), 4);
    EXPECT_THROW(resolve_basis("nope"), UsageError);
    EXPECT_THROW(resolve_basis("lp:abc:3"), UsageError);
    EXPECT_THROW(resolve_basis("lp:1.0:0"), UsageError);
    EXPECT_THROW(resolve_basis("summing"), UsageError);
}

TEST(BasisSystem, ValidatesInput) {
    const auto space = QuasiNorm::lp(1.0, 2);
    Matrix singular(2, 2);
    singular << 1, 2, 2, 4;
    EXPECT_THROW(BasisSystem(space, singular), UsageError);
    EXPECT_THROW(BasisSystem(space, Matrix::Identity(3, 3)), UsageError);
    Matrix zero_col = Matrix::Identity(2, 2);
    zero_col(1, 1) = 0.0;
    EXPECT_THROW(BasisSystem(space, zero_col), UsageError);
    Matrix bad_duals = Matrix::Identity(2, 2);
    bad_duals(0, 1) = 0.1;
    EXPECT_THROW(BasisSystem(space, Matrix::Identity(2, 2), bad_duals), UsageError);
}

TEST(BasisSystem, IllConditionedWarns) {
    Matrix v = Matrix::Identity(2, 2);
    v(1, 1) = 1e-9;
    const BasisSystem b(QuasiNorm::lp(2.0, 2), v);
    EXPECT_FALSE(b.warnings().empty());
    EXPECT_GT(b.condition_number(), BasisSystem::kConditionWarning);
}

TEST(BasisSystem, NormBounds) {
    const BasisSystem b = summing_basis(5);
    EXPECT_DOUBLE_EQ(b.max_vector_norm(), 1.0);
    // x_j^* = e_j^* - e_{j+1}^* has norm 2 on linf
    EXPECT_DOUBLE_EQ(b.max_dual_norm(), 2.0);
    EXPECT_TRUE(b.dual_norm_exact());
    EXPECT_FALSE(b.is_diagonal());
    EXPECT_TRUE(resolve_basis("lp:2.0:3").basis.is_diagonal());
}

TEST(BasisFile, RoundTripAndErrors) {
    const std::string text = R"({"space": {"kind": "lp", "p": "inf", "dim": 2},
                                 "vectors": [[1, 1], [0, 1]]})";
    const BasisSystem b = basis_from_json_text(text);
    EXPECT_EQ(b.vectors(), summing_basis(2).vectors());
    EXPECT_TRUE(b.duals().isApprox(summing_basis(2).duals()));

    const auto path = std::filesystem::temp_directory_path() / "greedylab_basis_test.json";
    {
        std::ofstream os(path);
        os << text;
    }
    EXPECT_EQ(load_basis_file(path.string()).vectors(), b.vectors());
    std::filesystem::remove(path);

    EXPECT_THROW(basis_from_json_text("{"), UsageError);
    EXPECT_THROW(basis_from_json_text(R"({"vectors": [[1]]})"), UsageError);
    EXPECT_THROW(basis_from_json_text(R"({"space": {"kind": "lq", "p": 1, "dim": 1}, "vectors": [[1]]})"),
                 UsageError);
    EXPECT_THROW(load_basis_file("/nonexistent/basis.json"), UsageError);

    const auto space = QuasiNorm::l2_blocks(1.0, {1, 2});
    const QuasiNorm back = space_from_json_text(space_to_json_text(space));
    EXPECT_EQ(back.kind(), SpaceKind::l2_blocks);
    EXPECT_EQ(back.block_sizes(), space.block_sizes());
}
