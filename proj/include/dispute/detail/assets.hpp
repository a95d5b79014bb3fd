// Generated by tools/embed_assets.py from assets/. Do not edit by hand.
#pragma once

#include <array>
#include <string_view>
#include <utility>

namespace dispute::detail {

inline constexpr std::array<std::pair<std::string_view, std::string_view>, 22> kEmbeddedAssets{{
    {"api/openapi", R"ASSET({
  "openapi": "3.0.3",
  "info": {
    "title": "dispute service",
    "version": "1.0.0",
    "description": "Material summaries of consumer case files, precedent retrieval and judge-based evaluation."
  },
  "paths": {
    "/v1/sectors": {
      "get": {
        "summary": "Sector taxonomy",
        "responses": {
          "200": {
            "description": "All sectors in code order",
            "content": {"application/json": {"schema": {"type": "array", "items": {"$ref": "#/components/schemas/Sector"}}}}
          }
        }
      }
    },
    "/v1/cases": {
      "post": {
        "summary": "Register one case file, or several under \"cases\"",
        "requestBody": {
          "content": {"application/json": {"schema": {"oneOf": [
            {"$ref": "#/components/schemas/CaseFile"},
            {"type": "object", "properties": {"cases": {"type": "array", "items": {"$ref": "#/components/schemas/CaseFile"}}}}
          ]}}}
        },
        "responses": {
          "201": {"description": "Stored", "content": {"application/json": {"schema": {"type": "object", "properties": {"ids": {"type": "array", "items": {"type": "string"}}}}}}},
          "409": {"$ref": "#/components/responses/Error"},
          "422": {"$ref": "#/components/responses/Error"}
        }
      }
    },
    "/v1/cases/{id}": {
      "get": {
        "summary": "A registered case file",
        "parameters": [{"name": "id", "in": "path", "required": true, "schema": {"type": "string"}}],
        "responses": {
          "200": {"description": "Case", "content": {"application/json": {"schema": {"$ref": "#/components/schemas/CaseFile"}}}},
          "404": {"$ref": "#/components/responses/Error"}
        }
      }
    },
    "/v1/summarize": {
      "post": {
        "summary": "Generate a material summary",
        "requestBody": {
          "content": {"application/json": {"schema": {
            "type": "object",
            "properties": {
              "case_id": {"type": "string"},
              "case_text": {"type": "string"},
              "written_statement_text": {"type": "string"},
              "strategy": {"type": "string", "enum": ["single", "partwise-sr", "partwise-cot"]}
            }
          }}}
        },
        "responses": {
          "200": {
            "description": "Summary",
            "content": {"application/json": {"schema": {
              "type": "object",
              "properties": {
                "case_id": {"type": "string"},
                "strategy": {"type": "string"},
                "summary": {"$ref": "#/components/schemas/MaterialSummary"},
                "rendered": {"type": "string"},
                "warnings": {"type": "array", "items": {"type": "string"}},
                "provenance": {"type": "object"}
              }
            }}}
          },
          "400": {"$ref": "#/components/responses/Error"},
          "404": {"$ref": "#/components/responses/Error"},
          "502": {"$ref": "#/components/responses/Error"}
        }
      }
    },
    "/v1/similar": {
      "post": {
        "summary": "Rank precedent judgments",
        "requestBody": {
          "content": {"application/json": {"schema": {
            "type": "object",
            "properties": {
              "overview": {"type": "string"},
              "summary": {"$ref": "#/components/schemas/MaterialSummary"},
              "case_id": {"type": "string"},
              "sector": {"type": "integer", "description": "Sector code; overrides the summary's sector"},
              "k": {"type": "integer", "minimum": 1, "default": 5},
              "weight": {"type": "number", "minimum": 0, "maximum": 1, "default": 0.5}
            }
          }}}
        },
        "responses": {
          "200": {
            "description": "Ranked judgments",
            "content": {"application/json": {"schema": {
              "type": "object",
              "properties": {
                "sector": {"$ref": "#/components/schemas/Sector"},
                "weight": {"type": "number"},
                "k": {"type": "integer"},
                "results": {"type": "array", "items": {"$ref": "#/components/schemas/RankedJudgment"}},
                "warnings": {"type": "array", "items": {"type": "string"}}
              }
            }}}
          },
          "400": {"$ref": "#/components/responses/Error"},
          "422": {"$ref": "#/components/responses/Error"},
          "503": {"$ref": "#/components/responses/Error"}
        }
      }
    },
    "/v1/evaluate": {
      "post": {
        "summary": "Judge generated summaries against references",
        "requestBody": {
          "content": {"application/json": {"schema": {
            "type": "object",
            "properties": {
              "pairs": {"type": "array", "items": {
                "type": "object",
                "properties": {
                  "id": {"type": "string"},
                  "original": {"$ref": "#/components/schemas/MaterialSummary"},
                  "generated": {"$ref": "#/components/schemas/MaterialSummary"}
                }
              }},
              "run_id": {"type": "string"},
              "kinds": {"type": "array", "items": {"type": "string"}}
            }
          }}}
        },
        "responses": {
          "200": {"description": "Metric report", "content": {"application/json": {"schema": {"type": "object"}}}},
          "400": {"$ref": "#/components/responses/Error"},
          "404": {"$ref": "#/components/responses/Error"}
        }
      }
    },
    "/v1/judgments/{id}": {
      "get": {
        "summary": "One judgment record",
        "parameters": [{"name": "id", "in": "path", "required": true, "schema": {"type": "string"}}],
        "responses": {
          "200": {"description": "Judgment", "content": {"application/json": {"schema": {"$ref": "#/components/schemas/Judgment"}}}},
          "404": {"$ref": "#/components/responses/Error"}
        }
      }
    },
    "/v1/health": {
      "get": {"summary": "Liveness and corpus size", "responses": {"200": {"description": "OK"}}}
    }
  },
  "components": {
    "responses": {
      "Error": {
        "description": "Failure with a machine-readable code",
        "content": {"application/json": {"schema": {"$ref": "#/components/schemas/Error"}}}
      }
    },
    "schemas": {
      "Error": {
        "type": "object",
        "required": ["error", "message"],
        "properties": {
          "error": {"type": "string", "example": "UnknownSectorCode"},
          "message": {"type": "string"},
          "line": {"type": "integer"},
          "part": {"type": "string"}
        }
      },
      "Sector": {
        "type": "object",
        "properties": {"name": {"type": "string"}, "code": {"type": "integer"}}
      },
      "Evidence": {
        "type": "object",
        "properties": {"label": {"type": "string"}, "description": {"type": "string"}}
      },
      "MaterialSummary": {
        "type": "object",
        "required": ["overview", "sector", "issues", "evidence_complainant", "evidence_opposite", "reliefs"],
        "properties": {
          "schema_version": {"type": "integer"},
          "overview": {"type": "string"},
          "sector": {"$ref": "#/components/schemas/Sector"},
          "issues": {"type": "array", "items": {"type": "string"}},
          "evidence_complainant": {"type": "array", "items": {"$ref": "#/components/schemas/Evidence"}},
          "evidence_opposite": {"type": "array", "items": {"$ref": "#/components/schemas/Evidence"}},
          "reliefs": {"type": "array", "items": {"type": "string"}}
        }
      },
      "CaseFile": {
        "type": "object",
        "required": ["id", "complaint_text"],
        "properties": {
          "id": {"type": "string"},
          "complaint_text": {"type": "string"},
          "written_statement_text": {"type": "string"},
          "metadata": {"type": "object", "additionalProperties": {"type": "string"}}
        }
      },
      "Judgment": {
        "type": "object",
        "required": ["id", "sector_code", "brief"],
        "properties": {
          "id": {"type": "string"},
          "title": {"type": "string"},
          "citation": {"type": "string"},
          "sector_name": {"type": "string"},
          "sector_code": {"type": "integer"},
          "brief": {"type": "string"},
          "full_text": {"type": "string"}
        }
      },
      "RankedJudgment": {
        "type": "object",
        "properties": {
          "judgment_id": {"type": "string"},
          "rank": {"type": "integer"},
          "lexical_score": {"type": "number"},
          "semantic_score": {"type": "number"},
          "fused_score": {"type": "number"},
          "title": {"type": "string"},
          "citation": {"type": "string"},
          "sector": {"$ref": "#/components/schemas/Sector"},
          "brief": {"type": "string"}
        }
      }
    }
  }
}
)ASSET"},
    {"judge/evidence_accuracy", R"ASSET(Task Description:
Review the evidence section in the generated summary by comparing it with the
ground truth of legal case summary. Verify whether the list of evidence matches
the evidence provided in the ground truth summary. Ensure there is no
hallucinated evidence and that all mentioned evidence corresponds accurately to
the ground truth.

Ground truth summary:
{original}

Generated Summary:
{generated}

Evaluation Criteria:
Yes: The evidence in the generated summary matches the ground truth summary,
with no hallucinated or missing evidence.
No: There are discrepancies, such as hallucinated evidence or missing
references from the ground truth summary.

Instructions:
Assign 'Yes' or 'No' strictly based on the evaluation criteria. Provide a
detailed explanation justifying the score. Include the final score using
<score></score> tags.

Response Format Example:
Provide a detailed explanation of the evaluation.
Final score: Score - <score>Yes</score> or <score>No</score>.
)ASSET"},
    {"judge/issue_formatting", R"ASSET(Task Description:
Evaluate whether the issues in the generated summary are captured in the correct
format. Specifically, check if:
1. The issues are presented as a numbered list.
2. Each issue addresses a distinct question of fact.
3. The factual claims by the complainant and those contested by the opposing
party are clearly stated.

Ground truth summary:
{original}

Generated Summary:
{generated}

Evaluation Criteria: Does the formatting meet the criteria?): [Yes/No]

Instructions:
Assign 'Yes' or 'No' strictly based on the evaluation criteria. Provide a
detailed explanation justifying the score. Include the final score using
<score></score> tags.

Response Format Example:
Provide a detailed explanation of the evaluation.
Final score: Score - <score>Yes</score> or <score>No</score>.
)ASSET"},
    {"judge/issues_accuracy", R"ASSET(Task Description:
Evaluate the accuracy of the issues presented in the generated summary by
comparing it is with the ground truth of the legal case summary. Ensure that the
issues align with the scope and factual details provided in the ground truth.
The issues must be logically derived from the factual matrix and the claims made
in the case. Inaccuracies, omissions, or misalignments should result in a lower
score based on the evaluation criteria.

Ground truth summary:
{original}

Generated Summary:
{generated}

Evaluation Criteria:
Rate the accuracy of the issues on a scale from 1 to 5:

<score>5</score>: The issues are perfectly accurate, comprehensive, and
logically derived from the facts and claims.
<score>4</score>: The issues are mostly accurate, with minor inconsistencies
or omissions.
<score>3</score>: The issues are somewhat accurate but include some significant
inconsistencies or omissions.
<score>2</score>: The issues are largely inaccurate or fail to align with the
factual details.
<score>1</score>: The issues are completely inaccurate, irrelevant, or not
derived from the factual matrix.
Instructions:


Instructions:
1. Assign a score strictly based on the evaluation criteria.
2. Include the score within `<score></score>` tags at the end of your response.

Response Format:
Final score: Present the score in this format: `<score>[1-5]</score>`.
)ASSET"},
    {"judge/oversimplification", R"ASSET(Task Description:
You are tasked with evaluating the level of oversimplification of the generated
summary by comparing it with the ground truth of legal case summary.
Specifically, assess whether the generated summary includes and adequately
describes the following critical components:
The service or product in question.
The problem with the product or service.
The damage caused by the problem.
The grievance mechanisms that have been used.
The claims made by the opposite party.
The parties involved in the issue.

If the summary omits any of these components or oversimplifies them, assign a
lower score based on the criteria below.

Ground truth summary:
{original}

Generated Summary:
{generated}


Evaluation Criteria:
Score the level of oversimplification from 1 to 5:
<score>5</score>: All key elements are present and clearly described without
oversimplification.
<score>4</score>: Most key elements are included, with minor omissions or slight
oversimplifications.
<score>3</score>: Some key elements are omitted or overly simplified, but the
main aspects are still represented.
<score>2</score>: Many important elements are omitted or significantly
oversimplified, leading to a vague summary.
<score>1</score>: Critical elements are missing or severely oversimplified,
distorting the essence of the case.


Instructions:
1. Assign a score strictly based on the evaluation criteria.
2. Include the score within `<score></score>` tags at the end of your response.

Response Format:
Final score: Present the score in this format: `<score>[1-5]</score>`.
)ASSET"},
    {"judge/overview_accuracy", R"ASSET(Task Description:
You are tasked with evaluating the accuracy of the generated summary by
comparing it with the ground truth of legal case summary. Your primary goal is
to assess how well the generated summary reflects the factual content, including
critical details such as dates, amounts, events, facts, and parties involved.
Accuracy is paramount, and any incorrect or misleading information should lead
to a lower score based on the provided criteria.

Ground truth summary:
{original}

Generated Summary:
{generated}


Evaluation Criteria:
Score from 1 to 5 based on accuracy:
<score>5</score>: Perfectly accurate; no factual inaccuracies or misleading
details.
<score>4</score>: Mostly accurate; contains minor factual errors or slightly
misleading details.
<score>3</score>: Moderately accurate; some factual inaccuracies, but key
information remains intact.
<score>2</score>: Significantly inaccurate; contains major errors or misleading
details but retains some correct facts.
<score>1</score>: Highly inaccurate; major errors or misleading details severely
distort the facts of the case.

Instructions:
1. Assign a score strictly based on the evaluation criteria.
2. Include the score within `<score></score>` tags at the end of your response.

Response Format:
Final score: Present the score in this format: `<score>[1-5]</score>`.
)ASSET"},
    {"judge/overview_retrieval", R"ASSET(Task Description:
You are tasked with evaluating how well the genrated summary retrieves relevant
facts incomparison with ground truth summary. Assess whether the generated
summary includes all critical facts and details present in the ground truth.
Any missing or inaccurately represented facts should result in a lower score
based on the criteria provided.

Ground truth summary:
{original}

Generated Summary:
{generated}

Evaluation Criteria:
Rate the summary's ability to retrieve relevant facts on a scale from 1 to 5:

<score>5</score>: The summary retrieves all critical facts with no omissions
or inaccuracies.
<score>4</score>: The summary is accurate but misses a few minor details.
<score>3</score>: Several important facts are missing, though the summary
retains some critical details.
<score>2</score>: Many significant facts are missing or inaccurately represented,
reducing clarity.
<score>1</score>: The summary fails to retrieve critical facts or entire
sections of the original case file.

Instructions:
1. Assign a score strictly based on the evaluation criteria.
2. Include the score within `<score></score>` tags at the end of your response.

Response Format:
Final score: Present the score in this format: `<score>[1-5]</score>`.
)ASSET"},
    {"judge/relief_accuracy", R"ASSET(Task Description:
Review the relief section in the generated summary. Check if the relief
presented in the generated summary match those mentioned in the ground truth
summary.

Ground truth summary:
{original}

Generated Summary:
{generated}

Evaluation Criteria:
Yes: The relief section in the generated summary matches the ground truth
summary, with no hallucinates or missing relieves.
No: There are discrepancies, such as hallucinated relieves or missing relieves
from the ground truth summary.

Instructions:
Assign 'Yes' or 'No' strictly based on the evaluation criteria. Provide a
detailed explanation justifying the score. Include the final score using
<score></score> tags.

Response Format Example:
Provide a detailed explanation of the evaluation.
Final score: Score - <score>Yes</score> or <score>No</score>.
)ASSET"},
    {"judge/sector_relevance", R"ASSET(Task Description:
Review the sector relevance in the generated summary by comparing it with the
ground truth of legal case summary. Compare the sector name in the generated
summary with the sector name in the ground truth. If sector name matches and
is relevant, mark the evaluation as "Yes." If either is incorrect or missing,
mark it as "No."

Ground truth summary:
{original}

Generated Summary:
{generated}

Instructions:
Assign 'Yes' or 'No' strictly based on the evaluation criteria. Provide a
detailed explanation justifying the score. Include the final score using
<score></score> tags.

Response Format Example:
Provide a detailed explanation of the evaluation.
Final score: Score - <score>Yes</score> or <score>No</score>.
)ASSET"},
    {"prompts/partwise-cot/evidence_complainant", R"ASSET(Evidence by the complainant: Carefully examine the complaint copy filed
by the complainant and follow these steps to extract the evidentiary items:
Scan through the text to identify any explicit references to physical or
digital materials submitted as part of the complaint.
Look for items such as receipts, invoices, tickets, contracts, bills, emails,
letters, photographs, videos, or any other documents cited by the complainant.
Ensure that each item is mentioned in the complaint itself and is part of the
official submission before the court.
For each evidence item, write a brief but clear description, focusing only on
its type and relevance.
Do not include items implied but not mentioned, or any interpretation,
background, or legal commentary.
Output your answer strictly in this format:
Evidence presented by the complainant:-
CE1. [Brief description of the first evidence item]
CE2. [Brief description of the second evidence item]
CE3. [Brief description of the third evidence item]
(...continue as needed)
Do not include anything outside this format.
)ASSET"},
    {"prompts/partwise-cot/evidence_opposite", R"ASSET(Evidence by the opposite party: Carefully read the written statement or reply
filed by the opposite party in the case file and follow these
steps to extract the evidence they have presented:
Identify all explicitly mentioned documents or materials submitted by the
opposite party as part of their defense or response.
Look for references to bills, receipts, contracts, photographs, videos,
official records, letters, emails, or any other material intended to support
their version of events. Verify that each item is specifically mentioned in the
written statement or attached as supporting material by the opposite party.
For each valid evidence item, write a concise and factual description,
limited to what is stated in the file.
Do not include any inferred evidence, commentary, or background explanation.
Output your answer strictly in the following format:
Evidence presented by the opposite party:-
OPE1. [Brief description of the first evidence item]
OPE2. [Brief description of the second evidence item]
OPE3. [Brief description of the third evidence item]
(...continue as needed)
Do not include anything beyond the list. No summaries, no headings, no
reasoning—just the formatted output.
)ASSET"},
    {"prompts/partwise-cot/issues", R"ASSET(Issues:- Carefully read the case file and follow these reasoning steps to
extract the key legal issues in dispute:
Identify the claims made by the complainant—what specific allegations,
factual assertions, or complaints have they raised?
Next, analyze the responses or counterclaims made by the opposite party—what
parts of the complainant’s case do they deny, reject, or challenge?
For each area of disagreement, formulate a precise, specific issue that reflects
a point of contention between the parties.
Make sure each issue captures only one distinct claim or factual dispute.
Exclude any background details, narrative summaries, or uncontested facts.
Present your final answer in this strict format:
Issues:-
1) [First issue]
2) [Second issue]
...(and so on)
Only include actively disputed issues that form part of the legal conflict.
)ASSET"},
    {"prompts/partwise-cot/overview", R"ASSET(Carefully read the provided consumer case file and think step-by-step to
extract a comprehensive overview. Start by identifying:
The product or service that is central to the grievance.
Next, describe the specific defect or issue the consumer experienced with it.
Then, consider what impact, harm, or inconvenience it caused the consumer.
Examine whether the consumer has tried any grievance mechanisms or escalation
steps (e.g., complaints, repairs, refund requests).
Analyze the response or counterclaims made by the opposite party or parties.
Clearly identify the parties involved in the case. If there are more than four
opposite parties, group or summarize them to maintain clarity.
Finally, reflect on the above details and summarize the core legal issue in
dispute in one sentence.
Now, write a single detailed overview paragraph (7–10 lines minimum)
incorporating all of the above points.
Format your response as:
Overview: [Write the full overview paragraph here]
)ASSET"},
    {"prompts/partwise-cot/reliefs", R"ASSET(Relief:- Follow these reasoning steps to extract the reliefs requested:
1. Locate the prayer or relief section of the complaint, usually found at the
end of the complaint copy.
2. Identify each specific request made by the complainant to the court — this
could include refunds, compensation, damages, interest, litigation costs,
or any declaratory or injunctive relief.
3. Ensure that each relief is explicitly mentioned in the prayer and not
inferred from the narrative.
4. If a monetary amount is stated, include the figure as written.
5. List each relief as a separate bullet point, without interpretation, summary,
or rephrasing.
Present your final answer strictly in this format:
Reliefs:-
[First relief requested, include figures if mentioned]
[Second relief requested]  [Third relief requested](...and so on)
Do not include any additional explanation, headings, or commentary—only the
relief list.
)ASSET"},
    {"prompts/partwise-cot/sector", R"ASSET(Sector: Carefully examine the provided case file and think step-by-step
to identify the correct sector classification.
First, determine the product or service that is central to the grievance.
Then, analyze the identity or nature of the opposite party — what type of
organization or business are they? (e.g., a bank, hospital, e-commerce site).
Use both the product/service and the opposite party’s nature to assess which
sector best fits.
Refer to the list of sectors and select the single most appropriate match based
on the combined information.
Do not explain your choice — only output the final classification in the
required format.
Your response must strictly follow this format (no extra text or explanation):
Sector:- [Sector Name], [Sector Code]
Use only one of the following predefined sectors:
Banking and Financial Services 101
Insurance  102 Retail - Clothing  103
Retail - Electronics  104  Retail - Home & Furniture  105
Retail - Groceries and FMCG 106  Retail - Beauty & Personal Care 107
E-commerce  108  Telecommunications  109 Consumer Electronics 110
Healthcare and Pharmaceuticals 111
Medical Services (including Negligence) 112 Transport - Airlines    113
Transport - Railways  114  Real Estate 115
Utilities (Electricity, Water)  116  Automobiles 117  Food Services   118
Travel and Tourism 119 Education   120  Entertainment and Media 121
Legal Services  122  Home Services   123  Sports and Recreation   124
Technology Services 125  Legal Metrology 126
Petroleum   127  Postal and Courier  128  Others  999
)ASSET"},
    {"prompts/partwise-sr/evidence_complainant", R"ASSET(Evidence by the complainant:-
Extract the evidence presented by the complainant from the case file.
These are the items of evidentiary material (such as receipts, contracts,
tickets, bills, photos, videos, etc.) that are mentioned in the complaint copy
filed before the court.
Present the output strictly in the following format:
Evidence presented by the complainant:-
CE1. [Brief description of the first evidence item]
CE2. [Brief description of the second evidence item]
CE3. [Brief description of the third evidence item]
(...continue as needed)
Use the prefix “CE” followed by the number for each item.
Only include evidence explicitly mentioned in the complaint copy.
Do not include anything outside this format—no explanations, headers, or
summaries
)ASSET"},
    {"prompts/partwise-sr/evidence_opposite", R"ASSET(Evidences by the opposite party:-
Extract the evidences presented by the opposite party from the case file.
These are the items of evidentiary material (such as receipts, contracts,
tickets, bills, photos, videos, etc.) that are mentioned in the written
statement filed by the opposite party before the court.
Present the output strictly in the following format:
Evidences presented by the opposite party:-
OPE1. [Brief description of the first evidence item]
OPE2. [Brief description of the second evidence item]
OPE3. [Brief description of the third evidence item]
(...continue as needed)
Use the prefix “OPE” followed by the number for each item.Only include
evidence explicitly mentioned in the case file or written statement.
Do not include anything outside this format. No commentary, no headers, no
summaries—just the list as shown.
)ASSET"},
    {"prompts/partwise-sr/issues", R"ASSET(Issues: Extract the key issues presented in the case file.
These should reflect the disputed questions or factual claims that have been
brought before the court.
Each issue must be a specific point of contention between the complainant and
the opposing party—claims made by
the complainant and denied or challenged by the opposite party.
The output should follow this format:
Issues:-
[First issue] [Second issue] ...
Ensure each issue is clearly worded and focused on one distinct question
or claim. Only include issues that are actively disputed or form part of the
legal conflict. Do not include any explanatory or background information.
)ASSET"},
    {"prompts/partwise-sr/overview", R"ASSET(Overview:- Extract a detailed overview of the consumer case from the
provided case file.Your output should follow this format:
Overview: [Write the overview here in a single paragraph]
The overview must include the following information:
What is the product or service that is the subject of the consumer grievance?
What specific issue or defect did the consumer face with the product or service?
What was the impact or damage caused to the consumer?
What steps or grievance mechanisms (if any) has the consumer already used?
What is the claim or response made by the opposite party or parties?
Clearly identify the parties involved in the dispute. If there are more than
four opposite parties, provide a short summary or grouping instead of listing
all names.
Conclude with a single sentence summarizing the core legal issue in dispute.
The answer should be in a single paragraph and should be at least 7–10 lines
long to ensure completeness and clarity.
)ASSET"},
    {"prompts/partwise-sr/reliefs", R"ASSET(Extract the reliefs requested by the complainant from the case file.
These are the reliefs mentioned in the prayer section of the complaint copy.
Present the output in the following format:
Reliefs:-
[First relief requested, include figures if mentioned]
[Second relief requested]
[Third relief requested]
(...and so on)
Do not include anything else—only the numbered list as shown.
No explanations or extra text.
)ASSET"},
    {"prompts/partwise-sr/sector", R"ASSET(Sector: From the given case file, identify the sector name and sector code
that best represents the subject of the consumer grievance. Your classification
should be based on two main factors: The product or service involved in the
dispute The identity or nature of the opposite party (e.g., a bank, hospital,
airline,e-commerce platform, etc.) Use this combined information to determine
the most appropriate sector. Your output should strictly follow this format:
Sector:- [Sector Name], [Sector Code]
Do not include any explanation or reasoning.
Select only one sector name and code from the list below:
Banking and Financial Services 101 Insurance 102
Retail - Clothing 103 Retail - Electronics 104 Retail - Home & Furniture
105 Retail - Groceries and FMCG 106 Retail - Beauty & Personal Care
107 E-commerce 108 Telecommunications 109 Consumer Electronics
110 Healthcare and Pharmaceuticals 111 Medical Services (including Negligence)
112 Transport - Airlines 113 Transport - Railways 114 Real Estate
115 Utilities (Electricity, Water) 116 Automobiles
117 Food Services 118 Travel and Tourism 119 Education 120
Entertainment and Media
121 Legal Services 122 Home Services 123 Sports and Recreation
124 Technology Services 125 Legal Metrology 126 Petroleum
127 Postal and Courier 128 Others 999
)ASSET"},
    {"prompts/single/whole_summary", R"ASSET(Extract the following 6 components of the material summary and no other headings.
Every material summary should contain only these 6 components and
no other headings.

1. Overview: In this section, include a description of the facts of the
given consumer case.
The factual summary you prepare should include the following:
what was the service or product in question which forms the subject of the
consumer grievance?;
what was the problem with the product or service?;
What damage was caused by the problem?;
what is/are the grievance mechanism(s) that have been availed by the consumer
thus far, if any, and
what is the claim of the opposite party? Clearly specify the parties
in the dispute, especially if there are multiple parties.
A longer list of opposite parties (over 4) may be condensed into a short
summary of opposite parties. You can end this by mentioning the core of the
legal issue being disputed in one sentence. This section should be at least
7-10 lines long.

2. Sector: What sector of consumer grievance/protection does this case fall
under from the list below? The list of sectors is as follows: Extract the sector
along with the number next to it. The sectors can only be one of the following
with their respective sector codes:-
Banking and Financial Services  101 Insurance   102
Retail - Clothing   103 Retail - Electronics    104
Retail - Home & Furniture   105
Retail - Groceries and FMCG 106 Retail - Beauty & Personal Care 107
E-commerce  108 Telecommunications  109
Medical Services (including Negligence) 112
Transport - Airlines    113 Transport - Railways    114 Real Estate 115
Utilities (Electricity, Water)  116 Automobiles 117 Food Services   118
Education   120
Entertainment and Media 121 Legal Services  122 Home Services   123
Sports and Recreation   124 Technology Services 125
Legal Metrology 126 Petroleum   127 Postal and Courier  128 Others  999

3. Issues: This section of the material summary should primarily be the issues
brought before the court.
Include a numbered list of the issues in the case, i.e., what factual claims
have been put forth by the complainant and which are contested by the
opposing party.
Each issue should represent a distinct question.

4. Evidence presented by the complainant: A list of the evidentiary material
[e.g., purchase receipts, contracts, tickets, bills, photos, videos],
if mentioned in the copy of the complaint that has been filed before the court
by the complainant, with a brief description of each item. The list should be
numbered preceded in the following style:
"CE1. [mention a brief description of the first item of complainant evidence]
CE2. [mention a brief description of
the second item of complainant party evidence]
CE3. [mention a brief description of the third item of complainant
evidence, and so on]."

If the complaint doesn't explicitly mention evidence, consider phrases
like "evidence attached as annexure" to indicate supporting documentation.
If the evidence list is not provided in the complaint
copy, write "Nil" in the Material Summary in this section.

5. Evidence presented by the opposite party: A list of the evidentiary material
[e.g., purchase receipts, contracts, tickets, bills, photos, videos],
if mentioned in the copy of the written statement,
that has been filed before the court by the opposite party, with a brief
description of each item. The list should be numbered preceded
in the following style:
"OPE1. [mention a brief description of the first item of opposite party
evidence]
OPE2. [mention a brief description of the second item of opposite party
evidence]
OPE3. [mention a brief description of the third item of opposite
party evidence, and so on]."

If the complaint doesn't explicitly mention evidence, consider phrases
like "evidence attached as annexure" to indicate supporting documentation.
If the evidence list is not provided in the written statement copy,
write "Nil" in the Material Summary in this section.

6. Reliefs: In this section, include a numbered list of reliefs requested by
the complainant in the prayer of the complaint copy. It should be a numbered
list of reliefs claimed, with the figures if mentioned.
)ASSET"},
}};

}  // namespace dispute::detail
