#pragma once

#include <string>

#include "krag/challenge.hpp"

namespace krag::rag::prompts {

// --- agent prompts ---------------------------------------------------------

extern const char* kPlannerSystem;
extern const char* kPlannerUserTemplate;
extern const char* kExecutorSystem;
extern const char* kExecutorUserTemplate;

// Header under which a retrieved knowledge hint is appended to a prompt.
extern const char* kKnowledgeHeader;

std::string server_description(const ChallengeSpec& spec);
std::string render_planner_user(const ChallengeSpec& spec);
std::string render_executor_user(const ChallengeSpec& spec, const std::string& task_description);

// --- retrieval prompts ------------------------------------------------------

extern const char* kRagTemplate;
extern const char* kRelevanceGraderSystem;
extern const char* kHallucinationGraderSystem;
extern const char* kSolvedGraderSystem;
extern const char* kRewriterSystem;
extern const char* kDecompositionTemplate;
extern const char* kDecompositionFormatInstructions;
extern const char* kDecompositionDefaultTask;

std::string render_rag(const std::string& question, const std::string& context);
std::string render_decomposition(const std::string& context);

// --- auxiliary strategies ---------------------------------------------------

extern const char* kMultiQuerySystem;
extern const char* kStepBackSystem;
extern const char* kQuestionDecompositionSystem;

// --- graph extraction -------------------------------------------------------

extern const char* kTripletExtractionSystem;
extern const char* kQueryTripletSystem;

}  // namespace krag::rag::prompts
