//! Word banks for synthetic candidates.

pub(crate) struct Topic {
    pub field: &'static str,
    pub degree_field: &'static str,
    pub roles: [&'static str; 4],
    pub tools: [&'static str; 8],
    pub objects: [&'static str; 6],
    pub verbs: [&'static str; 6],
}

pub(crate) const TOPICS: [Topic; 10] = [
    Topic {
        field: "cloud infrastructure",
        degree_field: "Computer Engineering",
        roles: ["Site Reliability Engineer", "Cloud Engineer", "DevOps Engineer", "Platform Engineer"],
        tools: ["Kubernetes", "Terraform", "Docker", "Prometheus", "Grafana", "Ansible", "AWS", "Helm"],
        objects: [
            "container clusters",
            "deployment pipelines",
            "monitoring dashboards",
            "infrastructure automation",
            "incident response runbooks",
            "autoscaling policies",
        ],
        verbs: ["Managed", "Automated", "Operated", "Migrated", "Hardened", "Scaled"],
    },
    Topic {
        field: "data science",
        degree_field: "Statistics",
        roles: ["Data Scientist", "Machine Learning Engineer", "Data Analyst", "Research Scientist"],
        tools: ["Python", "pandas", "scikit-learn", "PyTorch", "SQL", "Spark", "Jupyter", "TensorFlow"],
        objects: [
            "churn prediction models",
            "recommendation systems",
            "forecasting pipelines",
            "feature stores",
            "experiment analyses",
            "customer segmentation",
        ],
        verbs: ["Trained", "Modeled", "Analyzed", "Deployed", "Evaluated", "Prototyped"],
    },
    Topic {
        field: "frontend development",
        degree_field: "Computer Science",
        roles: ["Frontend Engineer", "Web Developer", "UI Engineer", "Full Stack Developer"],
        tools: ["React", "TypeScript", "CSS", "Redux", "Webpack", "GraphQL", "Storybook", "Vite"],
        objects: [
            "component libraries",
            "checkout flows",
            "accessibility audits",
            "design systems",
            "single page applications",
            "responsive layouts",
        ],
        verbs: ["Designed", "Implemented", "Refactored", "Shipped", "Optimized", "Rebuilt"],
    },
    Topic {
        field: "corporate finance",
        degree_field: "Accounting",
        roles: ["Financial Analyst", "Senior Accountant", "Controller", "Investment Associate"],
        tools: ["Excel", "SAP", "Bloomberg", "QuickBooks", "Hyperion", "Tableau", "VBA", "NetSuite"],
        objects: [
            "quarterly forecasts",
            "budget variance reports",
            "month end close processes",
            "audit schedules",
            "valuation models",
            "cash flow statements",
        ],
        verbs: ["Prepared", "Reconciled", "Audited", "Forecasted", "Consolidated", "Reviewed"],
    },
    Topic {
        field: "digital marketing",
        degree_field: "Communications",
        roles: ["Marketing Manager", "Content Strategist", "Brand Manager", "Growth Marketer"],
        tools: ["HubSpot", "Google Analytics", "Salesforce", "Mailchimp", "Hootsuite", "SEMrush", "Canva", "Marketo"],
        objects: [
            "email campaigns",
            "brand guidelines",
            "social media calendars",
            "lead generation funnels",
            "product launch plans",
            "customer newsletters",
        ],
        verbs: ["Launched", "Planned", "Grew", "Coordinated", "Wrote", "Promoted"],
    },
    Topic {
        field: "biomedical research",
        degree_field: "Molecular Biology",
        roles: ["Research Associate", "Lab Technician", "Postdoctoral Fellow", "Clinical Research Coordinator"],
        tools: [
            "PCR",
            "CRISPR",
            "flow cytometry",
            "ELISA",
            "confocal microscopy",
            "R",
            "GraphPad Prism",
            "cell culture",
        ],
        objects: [
            "gene expression assays",
            "protein purification protocols",
            "clinical trial datasets",
            "tissue samples",
            "grant proposals",
            "lab safety procedures",
        ],
        verbs: ["Conducted", "Characterized", "Sequenced", "Documented", "Cultured", "Validated"],
    },
    Topic {
        field: "secondary education",
        degree_field: "Biology Education",
        roles: ["High School Teacher", "Curriculum Designer", "Instructional Coach", "Teaching Assistant"],
        tools: ["Google Classroom", "Canvas", "Moodle", "Smartboard", "Kahoot", "Zoom", "Blackboard", "Seesaw"],
        objects: [
            "biology lessons",
            "lesson plans",
            "student assessments",
            "parent conferences",
            "after school tutoring",
            "classroom routines",
        ],
        verbs: ["Taught", "Developed", "Mentored", "Graded", "Organized", "Facilitated"],
    },
    Topic {
        field: "supply chain operations",
        degree_field: "Supply Chain Management",
        roles: ["Supply Chain Analyst", "Logistics Coordinator", "Operations Manager", "Procurement Specialist"],
        tools: ["Oracle SCM", "Manhattan WMS", "JDA", "Kinaxis", "Power BI", "Excel", "SAP Ariba", "EDI"],
        objects: [
            "warehouse operations",
            "inbound shipments",
            "vendor contracts",
            "inventory levels",
            "delivery routes",
            "freight costs",
        ],
        verbs: ["Negotiated", "Reduced", "Tracked", "Streamlined", "Scheduled", "Sourced"],
    },
    Topic {
        field: "backend systems",
        degree_field: "Computer Science",
        roles: ["Backend Engineer", "Software Engineer", "Systems Engineer", "API Developer"],
        tools: ["Rust", "Go", "Java", "PostgreSQL", "Kafka", "Redis", "gRPC", "Linux"],
        objects: [
            "payment services",
            "message queues",
            "REST APIs",
            "database schemas",
            "batch jobs",
            "caching layers",
        ],
        verbs: ["Built", "Wrote", "Profiled", "Maintained", "Architected", "Debugged"],
    },
    Topic {
        field: "acute care nursing",
        degree_field: "Nursing",
        roles: ["Registered Nurse", "Charge Nurse", "Nurse Practitioner", "Clinical Nurse Educator"],
        tools: ["Epic", "Cerner", "telemetry monitors", "IV pumps", "Pyxis", "EHR charting", "BLS", "ACLS"],
        objects: [
            "patient care plans",
            "medication administration",
            "discharge education",
            "triage assessments",
            "infection control audits",
            "shift handoffs",
        ],
        verbs: ["Administered", "Assessed", "Educated", "Monitored", "Supervised", "Charted"],
    },
];

pub(crate) const FIRST_NAMES: [&str; 40] = [
    "Jane", "John", "Priya", "Wei", "Carlos", "Amara", "Liam", "Sofia", "Noah", "Aisha", "Mateo", "Olivia", "Kenji",
    "Fatima", "Lucas", "Elena", "Omar", "Hannah", "Diego", "Yuki", "Ethan", "Chloe", "Ravi", "Ingrid", "Samuel",
    "Leila", "Marcus", "Nadia", "Tomas", "Grace", "Arjun", "Maya", "Felix", "Zara", "Oscar", "Iris", "Hugo", "Lena",
    "Rafael", "Mei",
];

pub(crate) const LAST_NAMES: [&str; 40] = [
    "Doe", "Smith", "Patel", "Chen", "Garcia", "Okafor", "Nguyen", "Rossi", "Kim", "Haddad", "Silva", "Brown",
    "Tanaka", "Khan", "Muller", "Novak", "Ali", "Schmidt", "Lopez", "Sato", "Walker", "Dubois", "Iyer", "Larsen",
    "Cohen", "Farah", "Reed", "Petrov", "Costa", "Murphy", "Shah", "Lee", "Weber", "Bakr", "Nilsson", "Moreau",
    "Ortiz", "Fischer", "Santos", "Wong",
];

pub(crate) const COMPANIES: [&str; 20] = [
    "Acme Corp",
    "Northwind",
    "Globex",
    "Initech",
    "Umbrella Health",
    "Stark Logistics",
    "Wayne Finance",
    "Blue Harbor",
    "Summit Labs",
    "Riverbend Schools",
    "Pioneer Analytics",
    "Cobalt Systems",
    "Evergreen Bank",
    "Lumen Media",
    "Atlas Freight",
    "Harbor Hospital",
    "Quantum Retail",
    "Redwood Software",
    "Silverline Foods",
    "Vertex Biotech",
];

pub(crate) const CITIES: [&str; 12] = [
    "Austin, Texas",
    "Seattle, Washington",
    "Boston, Massachusetts",
    "Denver, Colorado",
    "Chicago, Illinois",
    "Atlanta, Georgia",
    "Toronto, Ontario",
    "Portland, Oregon",
    "Raleigh, North Carolina",
    "Phoenix, Arizona",
    "Columbus, Ohio",
    "Madison, Wisconsin",
];

pub(crate) const SCHOOLS: [&str; 10] = [
    "University of Michigan",
    "Ohio State University",
    "University of Texas",
    "Georgia Institute of Technology",
    "Purdue University",
    "University of Washington",
    "Boston University",
    "Arizona State University",
    "University of Florida",
    "Rutgers University",
];

pub(crate) const DEGREES: [&str; 4] =
    ["Bachelor of Science", "Master of Science", "Bachelor of Arts", "Master of Business Administration"];

pub(crate) const CLUBS: [&str; 6] =
    ["Debate Club", "Chess Club", "Student Government", "Robotics Team", "Hiking Society", "Volunteer Corps"];

pub(crate) const SOFT_SKILLS: [&str; 6] =
    ["Project Management", "Public Speaking", "Leadership", "Team Building", "Technical Writing", "Problem Solving"];

pub(crate) const LANGUAGES: [&str; 10] =
    ["English", "Spanish", "French", "German", "Mandarin", "Portuguese", "Hindi", "Japanese", "Italian", "Arabic"];

pub(crate) const PROFICIENCY: [&str; 5] = [
    "Native or bilingual proficiency",
    "Full professional proficiency",
    "Professional working proficiency",
    "Limited working proficiency",
    "Elementary proficiency",
];

pub(crate) const CERTIFICATIONS: [(&str, &str); 10] = [
    ("AWS Certified Solutions Architect", "Amazon Web Services"),
    ("Certified Kubernetes Administrator", "Linux Foundation"),
    ("Google Data Analytics Certificate", "Coursera"),
    ("Certified Public Accountant", "AICPA"),
    ("Project Management Professional", "PMI"),
    ("Certified Scrum Master", "Scrum Alliance"),
    ("Basic Life Support", "American Heart Association"),
    ("Six Sigma Green Belt", "ASQ"),
    ("Google Ads Certification", "Google"),
    ("Professional Teaching License", "State Board of Education"),
];

pub(crate) const HONORS: [&str; 6] = [
    "Dean's List for academic excellence",
    "Employee of the month award",
    "Best paper award at a regional conference",
    "President's award for outstanding service",
    "Hackathon winner for civic technology",
    "Scholarship for first generation students",
];

pub(crate) const ADJECTIVES: [&str; 6] =
    ["Motivated", "Detail oriented", "Versatile", "Curious", "Dependable", "Energetic"];

pub(crate) const OTHER_HEADINGS: [&str; 4] = ["Volunteer Experience", "Interests", "Courses", "Organizations"];

pub(crate) const INTERESTS: [&str; 8] = [
    "trail running on weekends",
    "mentoring through a local nonprofit",
    "amateur astronomy with a backyard telescope",
    "cooking regional dishes for friends",
    "restoring old bicycles",
    "volunteering at the city food bank",
    "playing cello in a community orchestra",
    "organizing neighborhood cleanups",
];

/// Free-form headings per label, all short and title case.
pub(crate) const GENERIC_HEADINGS: [(crate::resume::SectionLabel, [&str; 3]); 8] = {
    use crate::resume::SectionLabel::*;
    [
        (Summary, ["Summary", "Profile", "Professional Summary"]),
        (Experience, ["Experience", "Work History", "Professional Experience"]),
        (Education, ["Education", "Academic Background", "Schooling"]),
        (Skills, ["Skills", "Technical Skills", "Core Competencies"]),
        (Languages, ["Languages", "Language Skills", "Spoken Languages"]),
        (Certifications, ["Certifications", "Licenses & Certifications", "Credentials"]),
        (Honors, ["Awards", "Honors", "Achievements"]),
        (Projects, ["Projects", "Selected Projects", "Side Projects"]),
    ]
};
