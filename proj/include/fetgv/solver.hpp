#pragma once

#include <fetgv/fespace.hpp>
#include <fetgv/params.hpp>
#include <fetgv/shrink.hpp>
#include <fetgv/split_bregman.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace fetgv {

enum class Regularizer
{
    tv,
    fetgv,
    lapfetgv,
};

std::string to_string(Regularizer kind);
/// Accepts "tv", "fetgv", "lapfetgv".
Regularizer parse_regularizer(std::string_view name);

///
/// Linear constraint operators of one regularizer on a FeSpace.
///
/// Unknown layout: [u over triangles (when solving for u)] [w DOFs]. FE-TGV
/// uses every edge DOF; Lap-FE-TGV drops boundary DOFs (zero normal trace);
/// TV has no w.
///
/// Blocks, in order:
///   tv:       jump        [u]                                group 1, weight |E|
///   fetgv:    d0          [u] + h_E <w, mu_plus>              group 1, weight |E|
///             D1          grad w (2x2, row-major)             group 4, weight |T|
///             d2          [w](X_{E,1}), [w](X_{E,2})          group 2, weight |E|/2
///   lapfetgv: d0          [u] + <w, mu_plus> / |E|            group 1, weight |E|
///             div         div w                               group 1, weight |T|
///
class FeOperators
{
public:
    FeOperators(const FeSpace& space, Regularizer kind, bool solve_for_u);

    Regularizer kind() const { return m_kind; }
    Eigen::Index unknowns() const { return m_u_count + static_cast<Eigen::Index>(m_w_edges.size()); }
    Eigen::Index u_count() const { return m_u_count; }
    /// Mesh edge of each w unknown.
    const std::vector<int>& w_edges() const { return m_w_edges; }

    Eigen::VectorXd pack(const Dg0Field* u, const Rt1Field* w) const;
    Dg0Field unpack_u(const Eigen::VectorXd& z) const;
    Rt1Field unpack_w(const Eigen::VectorXd& z) const;

    /// Blocks for the given weights and penalties. With `fixed_u`, the jump of
    /// that field becomes the constant offset of the first block.
    std::vector<ShrinkBlock> blocks(const TgvParams& params, const PenaltyParams& penalties,
                                    const Dg0Field* fixed_u = nullptr) const;

private:
    const FeSpace* m_space;
    Regularizer m_kind;
    Eigen::Index m_u_count;
    std::vector<int> m_w_edges;
    std::vector<int> m_w_slot; ///< per mesh edge, -1 if not an unknown
};

/// Per-triangle fidelity weights: |T| on observed triangles, 0 elsewhere.
Eigen::VectorXd fidelity_weights(const TriMesh& mesh, const std::vector<bool>* mask = nullptr);

///
/// Quadratic (u, w) step of the denoising problem for one regularizer.
///
/// The returned engine owns the factored system matrix and maps split
/// variables to right-hand sides. Throws SingularSystem when the fidelity
/// weights do not pin the regularizer's kernel.
///
SplitBregman assemble_quadratic(const FeSpace& space, Regularizer kind, const Eigen::VectorXd& fidelity,
                                const Dg0Field& f, const TgvParams& params, const PenaltyParams& penalties);

struct DenoiseResult
{
    Dg0Field u;
    Rt1Field w;
    SplitVars vars;
    SolveReport report;
};

///
/// Regularized L2 denoising (or joint inpainting when `mask` is given):
///
///   min 1/2 sum_T mask_T |T| (u - f)^2 + R(u, w)
///
/// solved with split Bregman. A run that hits max_iter is returned with
/// report.converged == false and the iterate of lowest objective.
///
DenoiseResult solve_denoise(const FeSpace& space, const Dg0Field& f, const TgvParams& params,
                            const PenaltyParams& penalties, Regularizer kind, const StopCriteria& stop,
                            const std::vector<bool>* mask = nullptr);

/// Typed views of the FE-TGV split variables (block order d0, D1, d2).
EdgeScalarField as_edge_scalar(const Eigen::VectorXd& block);
CellMatrixField as_cell_matrix(const Eigen::VectorXd& block);
EdgeVectorP1Field as_edge_vector(const Eigen::VectorXd& block);

} // namespace fetgv
